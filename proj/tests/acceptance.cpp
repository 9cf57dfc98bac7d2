// Acceptance gate: eight end-to-end checks over the full pipeline, each
// printing one PASS/FAIL line with the measured numbers.  Exit status is
// zero only if every requested check passes.  Run with no arguments for
// all eight, or pass a single number to run one.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kbk/diagnostics.hpp"
#include "kbk/dynamics.hpp"
#include "kbk/etd.hpp"
#include "kbk/scenario.hpp"
#include "kbk/solutions.hpp"

using namespace kbk;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

void note(Outcome& o, const std::string& s) {
  if (!o.detail.empty()) o.detail += ", ";
  o.detail += s;
}

void expect(Outcome& o, bool cond, const std::string& label) {
  if (!cond) {
    o.ok = false;
    note(o, "VIOLATED: " + label);
  }
}

double max_field_err(const State& a, const State& b) {
  double m = 0;
  for (size_t j = 0; j < a.eta.size(); ++j) {
    m = std::max(m, std::abs(a.eta[j] - b.eta[j]));
    m = std::max(m, std::abs(a.v[j] - b.v[j]));
  }
  return m;
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = (double)x.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

real_field slope_field(const State& s) {
  spectrum sh = s.grid.forward(s.eta);
  return s.grid.inverse(s.grid.derivative(sh, 1));
}

// Position of the sharpest elevation gradient in one half of the domain.
double front_position(const State& s, const real_field& ex, bool right) {
  const auto& x = s.grid.nodes();
  double best = -1, pos = 0;
  for (int j = 0; j < s.grid.N(); ++j) {
    if (right ? (x[j] <= 0) : (x[j] >= 0)) continue;
    if (std::abs(ex[j]) > best) {
      best = std::abs(ex[j]);
      pos = x[j];
    }
  }
  return pos;
}

int sign_changes_near(const State& s, const real_field& ex, double x0,
                      double halfwidth) {
  const auto& x = s.grid.nodes();
  int count = 0, prev = 0;
  for (int j = 0; j < s.grid.N(); ++j) {
    if (std::abs(x[j] - x0) > halfwidth) continue;
    int sgn = (ex[j] > 0) - (ex[j] < 0);
    if (sgn == 0) continue;
    if (prev != 0 && sgn != prev) ++count;
    prev = sgn;
  }
  return count;
}

// 1. A unit-scale soliton crosses the domain with pointwise accuracy 1e-10
//    and energy conservation 1e-11 at every sample along the way.
Outcome soliton_accuracy() {
  Outcome o;
  Grid g(15.0, 2048);
  ModelParams p{1.0, 1.0};
  State init = good_soliton({0.8, 0.0, 1.0}, 0.0, g);
  const double E0 = energy(init, 1.0);
  double max_delta = 0;
  State fin = evolve(init, p, 1.0, 4000, 100,
                     [&](int, double, const State& s) {
                       max_delta = std::max(
                           max_delta, relative_drift(energy(s, 1.0), E0));
                     });
  State exact = good_soliton({0.8, 0.0, 1.0}, 1.0, g);
  double err_eta = 0, err_v = 0;
  for (int j = 0; j < g.N(); ++j) {
    err_eta = std::max(err_eta, std::abs(fin.eta[j] - exact.eta[j]));
    err_v = std::max(err_v, std::abs(fin.v[j] - exact.v[j]));
  }
  note(o, "err_eta=" + num(err_eta) + " err_v=" + num(err_v) +
              " max_delta=" + num(max_delta));
  expect(o, err_eta <= 1e-10, "eta error <= 1e-10");
  expect(o, err_v <= 1e-10, "v error <= 1e-10");
  expect(o, max_delta <= 1e-11, "energy drift <= 1e-11");
  return o;
}

// 2. Halving the time step shrinks the self-convergence error at fourth
//    order: the fitted slope must land in 4.0 +- 0.3.
Outcome temporal_order() {
  Outcome o;
  Grid g(15.0, 2048);
  ModelParams p{1.0, 1.0};
  State init = good_soliton({0.8, 0.0, 1.0}, 0.0, g);
  State ref = evolve(init, p, 1.0, 8000);
  std::vector<double> ln_nt, ln_err;
  for (int nt : {500, 1000, 2000}) {
    State s = evolve(init, p, 1.0, nt);
    double e = max_field_err(s, ref);
    ln_nt.push_back(std::log((double)nt));
    ln_err.push_back(std::log(e));
    note(o, "Nt=" + std::to_string(nt) + " err=" + num(e));
  }
  double order = -lsq_slope(ln_nt, ln_err);
  note(o, "order=" + num(order));
  expect(o, std::abs(order - 4.0) <= 0.3, "order within 4.0 +- 0.3");
  return o;
}

// 3. One-percent perturbations of the soliton relax to solitons whose
//    fitted velocities match the reference values to 5e-3.
Outcome perturbed_soliton_velocities() {
  Outcome o;
  Grid g(30.0, 4096);
  ModelParams p{1.0, 1.0};
  struct Case {
    double lambda, mu, want;
  };
  const Case cases[] = {
      {1.01, 1.0, 0.819},
      {0.99, 1.0, 0.7811},
      {1.0, 1.01, 0.8155},
      {1.0, 0.99, 0.7846},
  };
  for (const Case& c : cases) {
    State init = good_soliton({0.8, 0.0, 1.0}, 0.0, g);
    for (auto& v : init.v) v *= c.lambda;
    for (auto& e : init.eta) e *= c.mu;
    State fin = evolve(init, p, 5.0, 4000);
    auto fit = fit_soliton(fin);
    if (!fit) {
      expect(o, false, "fit succeeds for lambda=" + num(c.lambda) +
                           " mu=" + num(c.mu));
      continue;
    }
    note(o, "(" + num(c.lambda) + "," + num(c.mu) + ")->" + num(fit->C_fit));
    expect(o, std::abs(fit->C_fit - c.want) <= 5e-3,
           "C_fit within 5e-3 of " + num(c.want));
  }
  return o;
}

// 4. A Gaussian velocity bump conserves every tracked quantity: energy to
//    1e-9, the cross quantity and the higher invariant to 1e-6, the two
//    masses to 1e-12, and the first two density integrals to 1e-8 (scaled).
Outcome invariant_drift() {
  Outcome o;
  Grid g(30.0, 4096);
  ModelParams p{1.0, 1.0};
  State init = gaussian_data(BumpKind::v_bump, 3.0, g);
  const double E0 = energy(init, 1.0);
  const double H0_0 = h0(init), I3_0 = i3(init);
  const double me0 = g.integrate(init.eta), mv0 = g.integrate(init.v);
  std::complex<double> r1_0 = complex_integral(g, conserved_density(1, init));
  std::complex<double> r2_0 = complex_integral(g, conserved_density(2, init));
  const double s1 = std::max(1.0, std::abs(r1_0)),
               s2 = std::max(1.0, std::abs(r2_0));

  double d_E = 0, d_H0 = 0, d_I3 = 0, d_me = 0, d_mv = 0, d_r1 = 0, d_r2 = 0;
  evolve(init, p, 5.0, 4000, 80, [&](int, double, const State& s) {
    d_E = std::max(d_E, relative_drift(energy(s, 1.0), E0));
    d_H0 = std::max(d_H0, std::abs(h0(s) - H0_0));
    d_I3 = std::max(d_I3, std::abs(i3(s) / I3_0 - 1.0));
    d_me = std::max(d_me, std::abs(g.integrate(s.eta) - me0));
    d_mv = std::max(d_mv, std::abs(g.integrate(s.v) - mv0));
    d_r1 = std::max(
        d_r1,
        std::abs(complex_integral(g, conserved_density(1, s)) - r1_0) / s1);
    d_r2 = std::max(
        d_r2,
        std::abs(complex_integral(g, conserved_density(2, s)) - r2_0) / s2);
  });
  note(o, "dE=" + num(d_E) + " dH0=" + num(d_H0) + " dI3=" + num(d_I3) +
              " dm_eta=" + num(d_me) + " dm_v=" + num(d_mv) +
              " drho1=" + num(d_r1) + " drho2=" + num(d_r2));
  expect(o, d_E <= 1e-9, "energy drift <= 1e-9");
  expect(o, d_H0 <= 1e-6, "cross-quantity drift <= 1e-6");
  expect(o, d_I3 <= 1e-6, "higher-invariant drift <= 1e-6");
  expect(o, d_me <= 1e-12, "eta mass drift <= 1e-12");
  expect(o, d_mv <= 1e-12, "v mass drift <= 1e-12");
  expect(o, d_r1 <= 1e-8, "first density-integral drift <= 1e-8");
  expect(o, d_r2 <= 1e-8, "second density-integral drift <= 1e-8");
  return o;
}

// 5. Resolution into solitons: the emitted wave from a velocity bump fits a
//    leftward soliton tightly in a +-4 window, while an elevation bump of
//    the same size does not fit any member of the family.
Outcome gaussian_fits() {
  Outcome o;
  Grid g(30.0, 4096);
  ModelParams p{1.0, 1.0};

  State v_fin = evolve(gaussian_data(BumpKind::v_bump, 3.0, g), p, 5.0, 4000);
  auto vfit = fit_soliton(v_fin, 4.0);
  if (vfit) {
    note(o, "v-bump: C_fit=" + num(vfit->C_fit) +
                " residual=" + num(vfit->residual));
    expect(o, vfit->residual <= 0.1, "v-bump residual <= 0.1");
    expect(o, vfit->C_fit < 0, "v-bump soliton moves left");
  } else {
    expect(o, false, "v-bump fit succeeds");
  }

  State e_fin =
      evolve(gaussian_data(BumpKind::eta_bump, 3.0, g), p, 8.0, 4000);
  auto efit = fit_soliton(e_fin);
  if (efit) {
    note(o, "eta-bump: residual=" + num(efit->residual));
    expect(o, efit->residual > 0.5, "eta-bump residual > 0.5");
  } else {
    note(o, "eta-bump: no admissible fit");
  }
  return o;
}

// 6. Small dispersion: an elevation bump radiates two counter-propagating
//    oscillatory fans whose fronts march outward, with denser oscillations
//    at smaller eps, all while staying spectrally resolved.
Outcome dispersive_shock_fans() {
  Outcome o;
  Grid g(3.0, 16384);
  State init = gaussian_data(BumpKind::eta_bump, 1.0, g);

  State at2{g, {}, {}}, at3{g, {}, {}};
  evolve(init, ModelParams{0.1, 1.0}, 3.0, 10500, 3500,
         [&](int step, double, const State& s) {
           if (step == 7000) at2 = s;
           if (step == 10500) at3 = s;
         });
  double tail1 = dft_tail(at3);
  real_field ex2 = slope_field(at2), ex3 = slope_field(at3);
  double r2 = front_position(at2, ex2, true), l2 = front_position(at2, ex2, false);
  double r3 = front_position(at3, ex3, true), l3 = front_position(at3, ex3, false);
  int osc1 = sign_changes_near(at3, ex3, r3, 2.0);
  note(o, "eps=0.1: tail=" + num(tail1) + " fronts t2=(" + num(l2) + "," +
              num(r2) + ") t3=(" + num(l3) + "," + num(r3) +
              ") oscillations=" + std::to_string(osc1));
  expect(o, tail1 <= 1e-8, "eps=0.1 tail <= 1e-8");
  expect(o, r3 - r2 >= 0.5, "right front moves outward by >= 0.5");
  expect(o, l2 - l3 >= 0.5, "left front moves outward by >= 0.5");
  expect(o, osc1 >= 5, "at least 5 slope sign changes near the front");

  Grid g2(3.0, 32768);
  State fin2 = evolve(gaussian_data(BumpKind::eta_bump, 1.0, g2),
                      ModelParams{0.01, 1.0}, 3.0, 10500);
  double tail2 = dft_tail(fin2);
  real_field exf = slope_field(fin2);
  double rf = front_position(fin2, exf, true);
  int osc2 = sign_changes_near(fin2, exf, rf, 2.0);
  note(o, "eps=0.01: tail=" + num(tail2) +
              " oscillations=" + std::to_string(osc2));
  expect(o, tail2 <= 1e-8, "eps=0.01 tail <= 1e-8 at the doubled grid");
  expect(o, osc2 > osc1, "smaller eps packs more oscillations");

  State fin3 = evolve(gaussian_data(BumpKind::eta_bump, 1.0, g),
                      ModelParams{0.01, 1.0}, 3.0, 10500);
  note(o, "eps=0.01 at half grid: tail=" + num(dft_tail(fin3)) +
              " (reported only)");
  return o;
}

// 7. Closed-form certificates: profile residuals in the traveling frame,
//    the stationary pulse equation, and the companion family's amplitudes.
Outcome closed_form_certificates() {
  Outcome o;
  Grid g(30.0, 4096);
  double worst = 0;
  for (double C : {0.0, 0.5, -0.5, 0.8, -0.8}) {
    State s = good_soliton({C, 0.0, 1.0}, 0.0, g);
    worst = std::max(worst, traveling_wave_residual(s.v, C, 1.0, g));
  }
  note(o, "max profile residual=" + num(worst));
  expect(o, worst <= 1e-9, "traveling-frame residual <= 1e-9");

  Grid gs(15.0, 2048);
  State st = stationary_solution(1.0, gs);
  spectrum vh = gs.forward(st.v);
  real_field vpp = gs.inverse(gs.derivative(vh, 2));
  double ode = 0;
  for (int j = 0; j < gs.N(); ++j)
    ode = std::max(ode, std::abs(-vpp[j] + st.v[j] -
                                 0.5 * st.v[j] * st.v[j] * st.v[j]));
  note(o, "stationary equation residual=" + num(ode));
  expect(o, ode <= 1e-10, "stationary equation residual <= 1e-10");

  for (double k : {1.5, 2.0}) {
    auto [eta, v] = bad_soliton(k, 0.0, gs.nodes());
    double se = 0, sv = 0;
    for (int j = 0; j < gs.N(); ++j) {
      se = std::max(se, std::abs(eta[j]));
      sv = std::max(sv, std::abs(v[j]));
    }
    note(o, "k=" + num(k) + " sup_eta=" + num(se) + " sup_v=" + num(sv));
    expect(o, std::abs(se - 2 * (k - 1)) <= 1e-12,
           "companion sup eta = 2(k-1)");
    expect(o, std::abs(sv - 2 * (k - 1)) <= 1e-12, "companion sup v = 2(k-1)");
  }
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. Numerical hygiene: the change of variables round-trips at rounding
//    level, the integrator is exact on the pure linear flow, even/odd
//    symmetry survives a full run, and repeated runs are byte-identical.
Outcome numerical_hygiene() {
  Outcome o;

  Grid g(2.0, 128);
  State s{g, real_field(128), real_field(128)};
  for (int j = 0; j < 128; ++j) {
    double x = g.nodes()[j] / g.L();
    s.eta[j] = 0.7 * std::cos(x) - 0.2 * std::sin(3 * x);
    s.v[j] = 0.4 * std::sin(x) + 0.1 * std::cos(2 * x);
  }
  ModelParams p{1.0, 1.0};
  State back = from_diagonal(to_diagonal(s, p), p);
  double rt = max_field_err(s, back);
  note(o, "round-trip=" + num(rt));
  expect(o, rt <= 1e-13, "diagonalization round-trip <= 1e-13");

  // Pure linear flow over 4000 steps; modest amplitudes keep the per-entry
  // table rounding from accumulating past the absolute bound.
  const double omegas[] = {0.0, 1.0, M_SQRT2, 3.7, 10.0, 50.0, -4.0, -0.3};
  spectrum lambda(8), u(8), u0(8);
  for (int m = 0; m < 8; ++m) {
    lambda[m] = std::complex<double>(0.0, omegas[m]);
    u0[m] = 0.3 * std::exp(std::complex<double>(0.0, 0.7 * m));
    u[m] = u0[m];
  }
  ETDStepper stepper(phi_tables(lambda, 1.0 / 4000),
                     [](const spectrum&, spectrum& n) {
                       std::fill(n.begin(), n.end(), 0.0);
                     });
  for (int step = 0; step < 4000; ++step) stepper.step(u);
  double lin = 0;
  for (int m = 0; m < 8; ++m)
    lin = std::max(lin, std::abs(u[m] - u0[m] * std::exp(lambda[m])));
  note(o, "linear-flow error=" + num(lin));
  expect(o, lin <= 1e-13, "pure linear flow exact to 1e-13");

  Grid gp(3.0, 4096);
  State pin = gaussian_data(BumpKind::eta_bump, 1.0, gp);
  State pfin = evolve(pin, ModelParams{0.1, 1.0}, 1.0, 1000);
  double odd_eta = 0, even_v = 0;
  for (int j = 1; j < gp.N(); ++j) {
    int jr = gp.N() - j;
    odd_eta = std::max(odd_eta, 0.5 * std::abs(pfin.eta[j] - pfin.eta[jr]));
    even_v = std::max(even_v, 0.5 * std::abs(pfin.v[j] + pfin.v[jr]));
  }
  note(o, "odd_eta=" + num(odd_eta) + " even_v=" + num(even_v));
  expect(o, odd_eta <= 1e-10, "eta stays even to 1e-10");
  expect(o, even_v <= 1e-10, "v stays odd to 1e-10");

  fs::path root = fs::temp_directory_path() / "kbk-acceptance";
  fs::remove_all(root);
  ScenarioConfig cfg = defaults_for(Scenario::gaussian_v);
  cfg.L = 10;
  cfg.N = 512;
  cfg.T = 0.1;
  cfg.Nt = 20;
  cfg.A = 1.0;
  cfg.snapshots = 4;
  cfg.output_dir = (root / "a").string();
  RunSummary ra = run_scenario(cfg);
  cfg.output_dir = (root / "b").string();
  RunSummary rb = run_scenario(cfg);
  bool same = ra.status == 0 && rb.status == 0;
  for (const char* f : {"diagnostics.csv", "snap_004.dat"}) {
    std::string ca = slurp(root / "a" / f), cb = slurp(root / "b" / f);
    same = same && !ca.empty() && ca == cb;
  }
  note(o, std::string("repeat runs identical=") + (same ? "yes" : "no"));
  expect(o, same, "repeated runs byte-identical");
  return o;
}

Outcome run_criterion(int n) {
  switch (n) {
    case 1: return soliton_accuracy();
    case 2: return temporal_order();
    case 3: return perturbed_soliton_velocities();
    case 4: return invariant_drift();
    case 5: return gaussian_fits();
    case 6: return dispersive_shock_fans();
    case 7: return closed_form_certificates();
    case 8: return numerical_hygiene();
  }
  return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > 8) {
      std::fprintf(stderr, "usage: %s [1-8]\n", argv[0]);
      return 2;
    }
    which.push_back(n);
  } else {
    for (int n = 1; n <= 8; ++n) which.push_back(n);
  }

  bool all_ok = true;
  for (int n : which) {
    Outcome o;
    try {
      o = run_criterion(n);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("acceptance %d: %s (%s)\n", n, o.ok ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && o.ok;
  }
  return all_ok ? 0 : 1;
}
