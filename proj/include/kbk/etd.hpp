// Fourth-order exponential time differencing (Cox-Matthews ETDRK4) for
// u_t = Lambda u + N(u) with diagonal Lambda, plus the fixed-step evolution
// driver for the diagonalized water-wave system.
#ifndef KBK_ETD_HPP
#define KBK_ETD_HPP

#include <functional>
#include <stdexcept>
#include <string>

#include "kbk/dynamics.hpp"

namespace kbk {

struct ETDTables {
  double h = 0;
  spectrum E_full;  // exp(z),    z = Lambda*h
  spectrum E_half;  // exp(z/2)
  spectrum Q;       // h (e^{z/2}-1)/z
  spectrum f1;      // h (-4 - z + e^z (4 - 3z + z^2)) / z^3
  spectrum f2;      // 2h (2 + z + e^z (-2 + z)) / z^3
  spectrum f3;      // h (-4 - 3z - z^2 + e^z (4 - z)) / z^3
};

// Per-mode coefficient tables. The closed forms cancel catastrophically as
// z -> 0, so for |z| < 1/2 each weight is averaged over 32 points on a unit
// circle around z; elsewhere the closed form is used directly.
ETDTables phi_tables(const spectrum& lambda, double h);

// One ETDRK4 step of the full coefficient vector u in place. nl must write
// N(u) for the given u into its second argument (same length as u).
using nonlinear_fn = std::function<void(const spectrum&, spectrum&)>;

class ETDStepper {
public:
  ETDStepper(ETDTables tables, nonlinear_fn nl);
  void step(spectrum& u);
  const ETDTables& tables() const { return tab_; }

private:
  ETDTables tab_;
  nonlinear_fn nl_;
  spectrum a_, b_, c_, n0_, na_, nb_, nc_;
};

// Thrown when a non-finite value appears mid-run (blow-up or resolution
// failure); carries the offending step and simulation time.
class blow_up_error : public std::runtime_error {
public:
  blow_up_error(int step, double t);
  int step() const { return step_; }
  double time() const { return t_; }

private:
  int step_;
  double t_;
};

// Called every `cadence` steps (and at steps 0 and Nt) with the physical
// state. Must not mutate solver state.
using evolve_callback =
    std::function<void(int step, double t, const State& s)>;

// Diagonalize, advance Nt equidistant steps to time T, return the final
// physical state. Throws blow_up_error on non-finite values.
State evolve(const State& initial, const ModelParams& p, double T, int Nt,
             int cadence = 0, const evolve_callback& cb = nullptr);

}  // namespace kbk

#endif
