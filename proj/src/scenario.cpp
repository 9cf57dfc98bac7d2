#include "kbk/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "kbk/etd.hpp"
#include "kbk/solutions.hpp"

namespace kbk {

namespace {

struct NameEntry {
  Scenario s;
  const char* name;
};

const NameEntry kNames[] = {
    {Scenario::soliton_test, "soliton-test"},
    {Scenario::perturbed_soliton, "perturbed-soliton"},
    {Scenario::stationary_perturbed, "stationary-perturbed"},
    {Scenario::gaussian_v, "gaussian-v"},
    {Scenario::gaussian_eta, "gaussian-eta"},
    {Scenario::dsw, "dsw"},
    {Scenario::custom, "custom"},
};

bool wants_fit(Scenario s) { return s != Scenario::dsw; }

State initial_state(const ScenarioConfig& c, const Grid& g) {
  switch (c.scenario) {
    case Scenario::soliton_test:
      return good_soliton({c.C, 0.0, 1.0}, 0.0, g);
    case Scenario::perturbed_soliton: {
      State s = good_soliton({c.C, 0.0, 1.0}, 0.0, g);
      for (auto& v : s.v) v *= c.lambda;
      for (auto& e : s.eta) e *= c.mu;
      return s;
    }
    case Scenario::stationary_perturbed: {
      State s = stationary_solution(c.eps, g);
      for (auto& v : s.v) v *= c.lambda;
      for (auto& e : s.eta) e *= c.mu;
      return s;
    }
    case Scenario::gaussian_v:
      return gaussian_data(BumpKind::v_bump, c.A, g);
    case Scenario::gaussian_eta:
      return gaussian_data(BumpKind::eta_bump, c.A, g);
    case Scenario::dsw:
      return gaussian_data(BumpKind::eta_bump, c.A, g);
    case Scenario::custom:
      return good_soliton({c.C, 0.0, c.eps}, 0.0, g);
  }
  throw std::invalid_argument("unknown scenario");
}

std::string config_echo(const ScenarioConfig& c) {
  std::string s;
  s += "scenario=";
  s += scenario_name(c.scenario);
  s += " L=" + fmt17(c.L) + " N=" + std::to_string(c.N);
  s += " T=" + fmt17(c.T) + " Nt=" + std::to_string(c.Nt);
  s += " C=" + fmt17(c.C) + " lambda=" + fmt17(c.lambda) +
       " mu=" + fmt17(c.mu) + " A=" + fmt17(c.A) + " eps=" + fmt17(c.eps);
  s += " snapshots=" + std::to_string(c.snapshots);
  s += " dealias=" + std::string(c.dealias ? "1" : "0");
  return s;
}

void write_snapshot(const std::string& dir, int index, double t,
                    const ScenarioConfig& cfg, const State& s) {
  char name[64];
  std::snprintf(name, sizeof(name), "snap_%03d.dat", index);
  std::ofstream out(dir + "/" + name);
  out << "# t=" << fmt17(t) << " " << config_echo(cfg) << "\n";
  for (int j = 0; j < s.grid.N(); ++j)
    out << fmt17(s.grid.nodes()[j]) << " " << fmt17(s.eta[j]) << " "
        << fmt17(s.v[j]) << "\n";
}

void append_waterfall(std::ofstream& out, double t, const real_field& f) {
  out << fmt17(t);
  for (double fj : f) out << " " << fmt17(fj);
  out << "\n";
}

}  // namespace

const char* scenario_name(Scenario s) {
  for (const auto& e : kNames)
    if (e.s == s) return e.name;
  return "?";
}

std::optional<Scenario> scenario_from_name(const std::string& name) {
  for (const auto& e : kNames)
    if (name == e.name) return e.s;
  return std::nullopt;
}

ScenarioConfig defaults_for(Scenario s) {
  ScenarioConfig c;
  c.scenario = s;
  switch (s) {
    case Scenario::soliton_test:
    case Scenario::custom:
      c.L = 15;
      c.N = 1 << 11;
      c.T = 1;
      c.Nt = 4000;
      break;
    case Scenario::perturbed_soliton:
    case Scenario::stationary_perturbed:
    case Scenario::gaussian_v:
      c.L = 30;
      c.N = 1 << 12;
      c.T = 5;
      c.Nt = 4000;
      break;
    case Scenario::gaussian_eta:
      c.L = 30;
      c.N = 1 << 12;
      c.T = 8;
      c.Nt = 4000;
      break;
    case Scenario::dsw:
      c.L = 3;
      c.N = 1 << 14;
      c.T = 3;
      c.Nt = 10000;
      c.eps = 0.1;
      c.A = 1;
      break;
  }
  return c;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

RunSummary run_scenario(const ScenarioConfig& cfg) {
  RunSummary sum;
  sum.output_dir = cfg.output_dir;
  auto t_start = std::chrono::steady_clock::now();

  try {
    if (!(cfg.T > 0) || cfg.Nt < 1)
      throw std::invalid_argument("need T > 0 and Nt >= 1");
    if (cfg.snapshots < 1)
      throw std::invalid_argument("need at least one snapshot");
    if (!(cfg.eps > 0)) throw std::invalid_argument("need eps > 0");
    Grid g(cfg.L, cfg.N);
    ModelParams params{cfg.eps, cfg.dealias ? 2.0 / 3.0 : 1.0};
    State init = initial_state(cfg, g);

    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream csv(cfg.output_dir + "/diagnostics.csv");
    csv << "t,E,delta,H0,I3,mass_eta,mass_v,tail,min_depth\n";
    std::ofstream wf_eta(cfg.output_dir + "/waterfall_eta.dat");
    std::ofstream wf_v(cfg.output_dir + "/waterfall_v.dat");

    const double E0 = energy(init, cfg.eps);
    const int cadence = std::max(1, cfg.Nt / cfg.snapshots);
    int snap_index = 0;

    DiagnosticsRecord last{};
    auto on_snapshot = [&](int /*step*/, double t, const State& s) {
      DiagnosticsRecord r = make_record(s, cfg.eps, E0, t);
      csv << fmt17(r.t) << "," << fmt17(r.E) << "," << fmt17(r.delta) << ","
          << fmt17(r.H0) << "," << fmt17(r.I3) << "," << fmt17(r.mass_eta)
          << "," << fmt17(r.mass_v) << "," << fmt17(r.tail) << ","
          << fmt17(r.min_depth) << "\n";
      write_snapshot(cfg.output_dir, snap_index, t, cfg, s);
      append_waterfall(wf_eta, t, s.eta);
      append_waterfall(wf_v, t, s.v);
      ++snap_index;
      last = r;
    };

    State final_state =
        evolve(init, params, cfg.T, cfg.Nt, cadence, on_snapshot);

    sum.final_delta = last.delta;
    sum.final_tail = last.tail;
    sum.final_min_depth = last.min_depth;

    if (wants_fit(cfg.scenario)) {
      sum.fit = fit_soliton(final_state);
      std::ofstream fout(cfg.output_dir + "/fit.txt");
      if (sum.fit)
        fout << "C_fit=" << fmt17(sum.fit->C_fit)
             << " x0_fit=" << fmt17(sum.fit->x0_fit)
             << " residual=" << fmt17(sum.fit->residual) << "\n";
      else
        fout << "fit-failure\n";
    }

    if (cfg.scenario == Scenario::soliton_test) {
      State exact = good_soliton({cfg.C, 0.0, 1.0}, cfg.T, g);
      std::ofstream err(cfg.output_dir + "/error.dat");
      err << "# t=" << fmt17(cfg.T) << " pointwise error vs exact soliton\n";
      double me = 0, mv = 0;
      for (int j = 0; j < g.N(); ++j) {
        double de = final_state.eta[j] - exact.eta[j];
        double dv = final_state.v[j] - exact.v[j];
        me = std::max(me, std::abs(de));
        mv = std::max(mv, std::abs(dv));
        err << fmt17(g.nodes()[j]) << " " << fmt17(de) << " " << fmt17(dv)
            << "\n";
      }
      sum.max_err_eta = me;
      sum.max_err_v = mv;
    }

    if (sum.final_tail >= 1e-6) {
      sum.status = 3;
      sum.error = "run under-resolved: DFT tail " + fmt17(sum.final_tail);
    }
  } catch (const blow_up_error& e) {
    sum.status = 2;
    sum.error = e.what();
  } catch (const std::exception& e) {
    sum.status = 1;
    sum.error = e.what();
  }

  sum.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return sum;
}

std::vector<RunSummary> run_batch(const std::vector<ScenarioConfig>& cfgs,
                                  int jobs) {
  if (cfgs.empty()) throw std::invalid_argument("run_batch: empty batch");
  std::vector<RunSummary> out(cfgs.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < cfgs.size(); ++i) out[i] = run_scenario(cfgs[i]);
    return out;
  }
  std::mutex mx;
  size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lock(mx);
        if (next >= cfgs.size()) return;
        i = next++;
      }
      out[i] = run_scenario(cfgs[i]);
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(jobs, (int)cfgs.size());
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace kbk
