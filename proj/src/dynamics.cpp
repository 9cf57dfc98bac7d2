#include "kbk/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace kbk {

namespace {

const std::complex<double> I(0, 1);

inline double stretch(double k, double eps) {
  return std::sqrt(1 + eps * eps * k * k);
}

}  // namespace

spectrum linear_symbol(const Grid& g, const ModelParams& p, Branch b) {
  const auto& k = g.wavenumbers();
  spectrum lam(g.N());
  double sign = b == Branch::plus ? -1.0 : 1.0;
  for (int j = 0; j < g.N(); ++j)
    lam[j] = sign * I * k[j] * stretch(k[j], p.eps);
  return lam;
}

DiagonalState to_diagonal(const State& s, const ModelParams& p) {
  const Grid& g = s.grid;
  spectrum eh = g.forward(s.eta), vh = g.forward(s.v);
  DiagonalState d{g, spectrum(g.N()), spectrum(g.N())};
  const auto& k = g.wavenumbers();
  for (int j = 0; j < g.N(); ++j) {
    auto scaled = eh[j] / stretch(k[j], p.eps);
    d.u_plus[j] = vh[j] + scaled;
    d.u_minus[j] = vh[j] - scaled;
  }
  return d;
}

State from_diagonal(const DiagonalState& d, const ModelParams& p) {
  const Grid& g = d.grid;
  spectrum eh(g.N()), vh(g.N());
  const auto& k = g.wavenumbers();
  for (int j = 0; j < g.N(); ++j) {
    vh[j] = 0.5 * (d.u_plus[j] + d.u_minus[j]);
    eh[j] = 0.5 * stretch(k[j], p.eps) * (d.u_plus[j] - d.u_minus[j]);
  }
  return State{g, g.inverse(eh), g.inverse(vh)};
}

std::pair<spectrum, spectrum> nonlinear_term(const DiagonalState& d,
                                             const ModelParams& p) {
  const Grid& g = d.grid;
  State s = from_diagonal(d, p);
  real_field vv(g.N()), ev(g.N());
  for (int j = 0; j < g.N(); ++j) {
    vv[j] = s.v[j] * s.v[j];
    ev[j] = s.eta[j] * s.v[j];
  }
  spectrum vvh = g.forward(vv), evh = g.forward(ev);
  if (p.dealias_fraction < 1.0) {
    auto keep = g.dealias_mask(p.dealias_fraction);
    for (int j = 0; j < g.N(); ++j)
      if (!keep[j]) vvh[j] = evh[j] = 0.0;
  }
  const auto& k = g.wavenumbers();
  spectrum np(g.N()), nm(g.N());
  for (int j = 0; j < g.N(); ++j) {
    auto half_vv = 0.5 * vvh[j];
    auto scaled_ev = evh[j] / stretch(k[j], p.eps);
    np[j] = -I * k[j] * (half_vv + scaled_ev);
    nm[j] = -I * k[j] * (half_vv - scaled_ev);
  }
  return {std::move(np), std::move(nm)};
}

std::pair<real_field, real_field> rhs_physical(const State& s,
                                               const ModelParams& p) {
  const Grid& g = s.grid;
  spectrum eh = g.forward(s.eta), vh = g.forward(s.v);
  real_field vv(g.N()), ev(g.N());
  for (int j = 0; j < g.N(); ++j) {
    vv[j] = s.v[j] * s.v[j];
    ev[j] = s.eta[j] * s.v[j];
  }
  spectrum vvh = g.forward(vv), evh = g.forward(ev);
  if (p.dealias_fraction < 1.0) {
    auto keep = g.dealias_mask(p.dealias_fraction);
    for (int j = 0; j < g.N(); ++j)
      if (!keep[j]) vvh[j] = evh[j] = 0.0;
  }
  const auto& k = g.wavenumbers();
  spectrum et(g.N()), vt(g.N());
  double e2 = p.eps * p.eps;
  for (int j = 0; j < g.N(); ++j) {
    double kj = k[j];
    et[j] = -I * kj * ((1 + e2 * kj * kj) * vh[j] + evh[j]);
    vt[j] = -I * kj * (eh[j] + 0.5 * vvh[j]);
  }
  return {g.inverse(et), g.inverse(vt)};
}

}  // namespace kbk
