// Good Kaup-Broer-Kupershmidt system on the periodic grid:
//   eta_t + v_x + (eta v)_x - eps^2 v_xxx = 0
//   v_t + eta_x + v v_x = 0
// written in Fourier space and diagonalized in the linear part via
// u_pm = v_hat +- eta_hat / sqrt(1 + eps^2 k^2).
#ifndef KBK_DYNAMICS_HPP
#define KBK_DYNAMICS_HPP

#include <utility>

#include "kbk/grid.hpp"

namespace kbk {

struct ModelParams {
  double eps = 1.0;              // dispersion scale; 1 = unscaled system
  double dealias_fraction = 1.0; // 1 = no dealiasing of products
};

struct State {
  Grid grid;
  real_field eta, v;
};

struct DiagonalState {
  Grid grid;
  spectrum u_plus, u_minus;
};

enum class Branch { plus, minus };

// Lambda_pm(k) = -+ i k sqrt(1 + eps^2 k^2); purely imaginary.
spectrum linear_symbol(const Grid& g, const ModelParams& p, Branch b);

DiagonalState to_diagonal(const State& s, const ModelParams& p);
State from_diagonal(const DiagonalState& d, const ModelParams& p);

// N_pm(u) = -ik( (v^2)_hat/2 +- (eta v)_hat / sqrt(1+eps^2 k^2) ), with the
// products formed pointwise in physical space.
std::pair<spectrum, spectrum> nonlinear_term(const DiagonalState& d,
                                             const ModelParams& p);

// (eta_t, v_t) evaluated directly from the Fourier form of the system;
// cross-validation path only (the integrator uses the diagonal variables).
std::pair<real_field, real_field> rhs_physical(const State& s,
                                               const ModelParams& p);

}  // namespace kbk

#endif
