#include "kbk/etd.hpp"

#include <cmath>
#include <utility>

namespace kbk {

namespace {

struct Weights {
  std::complex<double> Q, f1, f2, f3;
};

Weights closed_form(std::complex<double> z) {
  auto ez = std::exp(z), ez2 = std::exp(0.5 * z);
  auto z3 = z * z * z;
  Weights w;
  w.Q = (ez2 - 1.0) / z;
  w.f1 = (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
  w.f2 = 2.0 * (2.0 + z + ez * (-2.0 + z)) / z3;
  w.f3 = (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
  return w;
}

}  // namespace

ETDTables phi_tables(const spectrum& lambda, double h) {
  if (!(h > 0)) throw std::invalid_argument("phi_tables: h must be positive");
  const int n = (int)lambda.size();
  const int M = 32;  // contour points; radius 1 circle centered at z
  ETDTables t;
  t.h = h;
  t.E_full.resize(n);
  t.E_half.resize(n);
  t.Q.resize(n);
  t.f1.resize(n);
  t.f2.resize(n);
  t.f3.resize(n);
  for (int j = 0; j < n; ++j) {
    auto z = lambda[j] * h;
    t.E_full[j] = std::exp(z);
    t.E_half[j] = std::exp(0.5 * z);
    Weights w;
    if (std::abs(z) >= 0.5) {
      w = closed_form(z);
    } else {
      w = {0, 0, 0, 0};
      for (int m = 0; m < M; ++m) {
        double th = 2 * M_PI * (m + 0.5) / M;
        auto wm = closed_form(z + std::complex<double>(std::cos(th),
                                                       std::sin(th)));
        w.Q += wm.Q;
        w.f1 += wm.f1;
        w.f2 += wm.f2;
        w.f3 += wm.f3;
      }
      w.Q /= M;
      w.f1 /= M;
      w.f2 /= M;
      w.f3 /= M;
    }
    t.Q[j] = h * w.Q;
    t.f1[j] = h * w.f1;
    t.f2[j] = h * w.f2;
    t.f3[j] = h * w.f3;
  }
  return t;
}

ETDStepper::ETDStepper(ETDTables tables, nonlinear_fn nl)
    : tab_(std::move(tables)), nl_(std::move(nl)) {
  size_t n = tab_.E_full.size();
  a_.resize(n);
  b_.resize(n);
  c_.resize(n);
  n0_.resize(n);
  na_.resize(n);
  nb_.resize(n);
  nc_.resize(n);
}

void ETDStepper::step(spectrum& u) {
  const size_t n = u.size();
  nl_(u, n0_);
  for (size_t j = 0; j < n; ++j)
    a_[j] = tab_.E_half[j] * u[j] + tab_.Q[j] * n0_[j];
  nl_(a_, na_);
  for (size_t j = 0; j < n; ++j)
    b_[j] = tab_.E_half[j] * u[j] + tab_.Q[j] * na_[j];
  nl_(b_, nb_);
  for (size_t j = 0; j < n; ++j)
    c_[j] = tab_.E_half[j] * a_[j] + tab_.Q[j] * (2.0 * nb_[j] - n0_[j]);
  nl_(c_, nc_);
  for (size_t j = 0; j < n; ++j)
    u[j] = tab_.E_full[j] * u[j] + tab_.f1[j] * n0_[j] +
           tab_.f2[j] * (na_[j] + nb_[j]) + tab_.f3[j] * nc_[j];
}

blow_up_error::blow_up_error(int step, double t)
    : std::runtime_error("non-finite value at step " + std::to_string(step) +
                         " (t = " + std::to_string(t) + ")"),
      step_(step),
      t_(t) {}

State evolve(const State& initial, const ModelParams& p, double T, int Nt,
             int cadence, const evolve_callback& cb) {
  if (!(T > 0) || Nt < 1)
    throw std::invalid_argument("evolve: need T > 0 and Nt >= 1");
  const Grid& g = initial.grid;
  const int n = g.N();
  const double h = T / Nt;

  spectrum lam(2 * n);
  {
    spectrum lp = linear_symbol(g, p, Branch::plus);
    spectrum lm = linear_symbol(g, p, Branch::minus);
    std::copy(lp.begin(), lp.end(), lam.begin());
    std::copy(lm.begin(), lm.end(), lam.begin() + n);
  }

  DiagonalState d = to_diagonal(initial, p);
  spectrum u(2 * n);
  std::copy(d.u_plus.begin(), d.u_plus.end(), u.begin());
  std::copy(d.u_minus.begin(), d.u_minus.end(), u.begin() + n);

  DiagonalState scratch{g, spectrum(n), spectrum(n)};
  auto nl = [&](const spectrum& uu, spectrum& out) {
    std::copy(uu.begin(), uu.begin() + n, scratch.u_plus.begin());
    std::copy(uu.begin() + n, uu.end(), scratch.u_minus.begin());
    auto [np, nm] = nonlinear_term(scratch, p);
    std::copy(np.begin(), np.end(), out.begin());
    std::copy(nm.begin(), nm.end(), out.begin() + n);
  };

  ETDStepper stepper(phi_tables(lam, h), nl);

  auto emit = [&](int step, double t) {
    if (!cb) return;
    std::copy(u.begin(), u.begin() + n, scratch.u_plus.begin());
    std::copy(u.begin() + n, u.end(), scratch.u_minus.begin());
    cb(step, t, from_diagonal(scratch, p));
  };

  emit(0, 0.0);
  for (int step = 1; step <= Nt; ++step) {
    stepper.step(u);
    for (const auto& uj : u)
      if (!std::isfinite(uj.real()) || !std::isfinite(uj.imag()))
        throw blow_up_error(step, step * h);
    if (step == Nt || (cadence > 0 && step % cadence == 0))
      emit(step, step * h);
  }

  std::copy(u.begin(), u.begin() + n, scratch.u_plus.begin());
  std::copy(u.begin() + n, u.end(), scratch.u_minus.begin());
  return from_diagonal(scratch, p);
}

}  // namespace kbk
