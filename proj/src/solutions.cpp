#include "kbk/solutions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kbk {

State good_soliton(const SolitonParams& p, double t, const Grid& g) {
  if (!(std::abs(p.C) < 1))
    throw std::invalid_argument("good_soliton: need |C| < 1");
  if (!(p.eps > 0))
    throw std::invalid_argument("good_soliton: need eps > 0");
  const double s = std::sqrt(1 - p.C * p.C);
  const double rs = s / std::sqrt(p.eps);
  const double period = 2 * M_PI * g.L();
  // The periodization is only as good as the decay across the half period;
  // a visible tail there leaks into the wrapped copies.
  const double tail =
      2 * (1 - p.C * p.C) / (p.eps * (std::cosh(rs * M_PI * g.L()) - p.C));
  if (tail > 1e-14)
    std::fprintf(stderr,
                 "warning: soliton tail %.3g at the domain boundary "
                 "(C=%g, L=%g); consider a larger L\n",
                 tail, p.C, g.L());
  State out{g, real_field(g.N()), real_field(g.N())};
  for (int j = 0; j < g.N(); ++j) {
    double xi = std::remainder(g.nodes()[j] - p.C * t - p.x0, period);
    double v = 2 * (1 - p.C * p.C) / (p.eps * (std::cosh(rs * xi) - p.C));
    out.v[j] = v;
    out.eta[j] = p.C * v - 0.5 * p.eps * v * v;
  }
  return out;
}

State stationary_solution(double eps, const Grid& g) {
  if (!(eps > 0))
    throw std::invalid_argument("stationary_solution: need eps > 0");
  State out{g, real_field(g.N()), real_field(g.N())};
  for (int j = 0; j < g.N(); ++j) {
    double v = 2 / (eps * std::cosh(g.nodes()[j] / std::sqrt(eps)));
    out.v[j] = v;
    out.eta[j] = -0.5 * eps * v * v;
  }
  return out;
}

std::pair<real_field, real_field> bad_soliton(double k, double t,
                                              const real_field& x) {
  if (!(k > 1)) throw std::invalid_argument("bad_soliton: need k > 1");
  const double a = 2 * (k * k - 1);
  const double w = std::sqrt(3 * (k * k - 1));
  real_field eta(x.size()), v(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    double ch = std::cosh(w * (x[j] - k * t));
    v[j] = a / (ch + k);
    eta[j] = a * (k * ch + 1) / ((ch + k) * (ch + k));
  }
  return {std::move(eta), std::move(v)};
}

State gaussian_data(BumpKind kind, double A, const Grid& g) {
  State out{g, real_field(g.N(), 0.0), real_field(g.N(), 0.0)};
  auto& target = kind == BumpKind::v_bump ? out.v : out.eta;
  for (int j = 0; j < g.N(); ++j)
    target[j] = A * std::exp(-g.nodes()[j] * g.nodes()[j]);
  return out;
}

double traveling_wave_residual(const real_field& v_profile, double c,
                               double eps, const Grid& g) {
  real_field phi_xx = g.inverse(g.derivative(g.forward(v_profile), 2));
  double sup = 0;
  for (int j = 0; j < g.N(); ++j) {
    double phi = v_profile[j];
    double r = -eps * phi_xx[j] + (1 - c * c) * phi +
               1.5 * c * eps * phi * phi - 0.5 * eps * eps * phi * phi * phi;
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

}  // namespace kbk
