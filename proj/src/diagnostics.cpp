#include "kbk/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kbk/solutions.hpp"

namespace kbk {

namespace {

const std::complex<double> I(0, 1);

real_field spectral_deriv(const Grid& g, const real_field& f, int order) {
  return g.inverse(g.derivative(g.forward(f), order));
}

complex_field cderiv(const Grid& g, const complex_field& f, int order) {
  const int n = g.N();
  real_field re(n), im(n);
  for (int j = 0; j < n; ++j) {
    re[j] = f[j].real();
    im[j] = f[j].imag();
  }
  real_field dre = spectral_deriv(g, re, order);
  real_field dim = spectral_deriv(g, im, order);
  complex_field out(n);
  for (int j = 0; j < n; ++j) out[j] = {dre[j], dim[j]};
  return out;
}

}  // namespace

double energy(const State& s, double eps) {
  const Grid& g = s.grid;
  real_field vx = spectral_deriv(g, s.v, 1);
  real_field dens(g.N());
  for (int j = 0; j < g.N(); ++j)
    dens[j] = 0.5 * (s.eta[j] * s.eta[j] + (1 + s.eta[j]) * s.v[j] * s.v[j] +
                     eps * eps * vx[j] * vx[j]);
  return g.integrate(dens);
}

double relative_drift(double E_t, double E_0, bool* used_absolute) {
  if (E_0 == 0) {
    if (used_absolute) *used_absolute = true;
    return std::abs(E_t);
  }
  if (used_absolute) *used_absolute = false;
  return std::abs(E_t / E_0 - 1);
}

double h0(const State& s) {
  real_field dens(s.grid.N());
  for (int j = 0; j < s.grid.N(); ++j) dens[j] = s.eta[j] * s.v[j];
  return s.grid.integrate(dens);
}

double i3(const State& s) {
  const Grid& g = s.grid;
  real_field vx = spectral_deriv(g, s.v, 1);
  real_field vxx = spectral_deriv(g, s.v, 2);
  real_field ex = spectral_deriv(g, s.eta, 1);
  real_field dens(g.N());
  for (int j = 0; j < g.N(); ++j) {
    double e = s.eta[j], v = s.v[j];
    dens[j] = (4 * vxx[j] * vxx[j] + 8 * vx[j] * vx[j] + 4 * v * v +
               4 * ex[j] * ex[j] + 4 * e * e + 6 * v * v * vx[j] * vx[j] -
               16 * e * v * vxx[j] - 6 * e * vx[j] * vx[j] + 10 * e * v * v +
               2 * e * e * e + v * v * v * v + 6 * e * e * v * v +
               e * v * v * v * v) /
              8;
  }
  return g.integrate(dens);
}

complex_field conserved_density(int n, const State& s) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("conserved_density: n must be in 1..4");
  const Grid& g = s.grid;
  const int N = g.N();
  real_field vx = spectral_deriv(g, s.v, 1);

  std::vector<complex_field> rho;
  complex_field r1(N);
  for (int j = 0; j < N; ++j) r1[j] = 0.5 * s.eta[j] + 0.5 * I * vx[j];
  rho.push_back(r1);

  if (n >= 2) {
    complex_field r1x = cderiv(g, rho[0], 1);
    complex_field r2(N);
    for (int j = 0; j < N; ++j)
      r2[j] = I * s.v[j] * rho[0][j] - 2.0 * r1x[j] + 0.5 * I * s.v[j];
    rho.push_back(r2);
  }
  for (int m = 3; m <= n; ++m) {
    // rho_m = i v rho_{m-1} - rho_{m-2} - 2 rho_{m-1}' - 2 sum rho_k rho_{m-1-k}
    complex_field rx = cderiv(g, rho[m - 2], 1);
    complex_field rm(N);
    for (int j = 0; j < N; ++j) {
      std::complex<double> conv = 0;
      for (int k = 1; k <= m - 2; ++k)
        conv += rho[k - 1][j] * rho[m - 1 - k - 1][j];
      rm[j] = I * s.v[j] * rho[m - 2][j] - rho[m - 3][j] - 2.0 * rx[j] -
              2.0 * conv;
    }
    rho.push_back(rm);
  }
  return rho[n - 1];
}

std::complex<double> complex_integral(const Grid& g, const complex_field& f) {
  std::complex<double> sum = 0;
  for (const auto& fj : f) sum += fj;
  return g.quad_weight() * sum;
}

double dft_tail(const State& s) {
  const Grid& g = s.grid;
  spectrum eh = g.forward(s.eta), vh = g.forward(s.v);
  const double cutoff = 0.9 * (g.N() / 2);
  double tail = 0, overall = 0;
  for (int j = 0; j < g.N(); ++j) {
    int m = j <= g.N() / 2 ? j : j - g.N();
    double mag = std::max(std::abs(eh[j]), std::abs(vh[j]));
    overall = std::max(overall, mag);
    if (std::abs(m) >= cutoff) tail = std::max(tail, mag);
  }
  return overall > 0 ? tail / overall : 0.0;
}

double min_depth(const State& s) {
  double m = 1 + s.eta[0];
  for (double e : s.eta) m = std::min(m, 1 + e);
  return m;
}

std::optional<SolitonFit> fit_soliton(const State& s,
                                      double window_halfwidth) {
  const Grid& g = s.grid;
  const int N = g.N();
  const double dx = g.dx();

  int j = 0;
  for (int i = 1; i < N; ++i)
    if (s.v[i] > s.v[j]) j = i;
  double vm = s.v[(j - 1 + N) % N], v0c = s.v[j], vp = s.v[(j + 1) % N];

  double denom = vm - 2 * v0c + vp;
  double shift = denom != 0 ? 0.5 * dx * (vm - vp) / denom : 0.0;
  double a = (vp + vm - 2 * v0c) / (2 * dx * dx);
  double b = (vp - vm) / (2 * dx);
  double v0 = a != 0 ? v0c - b * b / (4 * a) : v0c;

  if (v0 >= 4.0 || v0 <= 0.0) return std::nullopt;

  SolitonFit fit;
  fit.C_fit = 0.5 * v0 - 1;
  fit.x0_fit = g.nodes()[j] + shift;

  State ref = good_soliton({fit.C_fit, fit.x0_fit, 1.0}, 0.0, g);
  const double period = 2 * M_PI * g.L();
  double num = 0, den = 0;
  for (int i = 0; i < N; ++i) {
    if (std::abs(std::remainder(g.nodes()[i] - fit.x0_fit, period)) >
        window_halfwidth)
      continue;
    double d = s.v[i] - ref.v[i];
    num += d * d;
    den += s.v[i] * s.v[i];
  }
  fit.residual = den > 0 ? std::sqrt(num / den) : 0.0;
  return fit;
}

DiagnosticsRecord make_record(const State& s, double eps, double E0, double t,
                              int n_max) {
  DiagnosticsRecord r;
  r.t = t;
  r.E = energy(s, eps);
  r.delta = relative_drift(r.E, E0);
  r.H0 = h0(s);
  r.I3 = i3(s);
  r.mass_eta = s.grid.integrate(s.eta);
  r.mass_v = s.grid.integrate(s.v);
  for (int n = 1; n <= n_max; ++n)
    r.rho_integrals.push_back(
        complex_integral(s.grid, conserved_density(n, s)));
  r.tail = dft_tail(s);
  r.min_depth = min_depth(s);
  return r;
}

}  // namespace kbk
