// Closed-form solutions and initial-data constructors.
#ifndef KBK_SOLUTIONS_HPP
#define KBK_SOLUTIONS_HPP

#include <utility>

#include "kbk/dynamics.hpp"

namespace kbk {

struct SolitonParams {
  double C = 0.8;   // wave speed, |C| < 1
  double x0 = 0.0;  // peak location at t = 0
  double eps = 1.0; // dispersion scale
};

// Right-moving solitary wave evaluated at time t, wrapped periodically:
//   v = 2(1-C^2) / (eps [cosh(sqrt(1-C^2) xi / sqrt(eps)) - C]),
//   xi = x - C t - x0.
// At eps = 1 the companion profile is eta = C v - v^2/2, which annihilates
// the traveling-wave equation to round-off. For eps != 1 the same algebraic
// elimination gives eta = C v - (eps/2) v^2; that profile is exposed for
// shape studies but certified against the traveling-wave equation only at
// eps = 1.
State good_soliton(const SolitonParams& p, double t, const Grid& g);

// v = 2/(eps cosh(x/sqrt(eps))), eta = -(eps/2) v^2; time-independent.
State stationary_solution(double eps, const Grid& g);

// Solitary wave of the ill-posed (alpha = +1) variant, evaluation only:
//   v   = 2(k^2-1) / (cosh(sqrt(3(k^2-1)) xi) + k),
//   eta = 2(k^2-1)(k cosh(.) + 1) / (cosh(.) + k)^2,  xi = x - k t,  k > 1.
// Never fed to the integrator.
std::pair<real_field, real_field> bad_soliton(double k, double t,
                                              const real_field& x);

enum class BumpKind { v_bump, eta_bump };

// (eta, v) = (0, A e^{-x^2}) or (A e^{-x^2}, 0).
State gaussian_data(BumpKind kind, double A, const Grid& g);

// Sup-norm of -eps phi'' + (1-c^2) phi + (3/2) c eps phi^2 - (eps^2/2) phi^3
// under spectral differentiation; ~1e-9 or below for exact solitary profiles.
double traveling_wave_residual(const real_field& v_profile, double c,
                               double eps, const Grid& g);

}  // namespace kbk

#endif
