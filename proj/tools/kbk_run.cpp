// Command-line driver: run one canned scenario (flags override its baked-in
// defaults) or a batch file of blank-line-separated key=value stanzas.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kbk/scenario.hpp"

namespace {

using kbk::Scenario;
using kbk::ScenarioConfig;

// One stanza of a batch file: the keys mirror the CLI flag names.
using Stanza = std::vector<std::pair<std::string, std::string>>;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<Stanza> parse_batch_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open batch file: " + path);
  std::vector<Stanza> stanzas;
  Stanza current;
  std::string line;
  auto flush = [&]() {
    if (!current.empty()) stanzas.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, line)) {
    if (size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) {
      flush();
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("batch file: expected key=value, got '" + line +
                               "'");
    current.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  flush();
  if (stanzas.empty()) throw std::runtime_error("batch file has no runs");
  return stanzas;
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::runtime_error("expected a boolean, got '" + v + "'");
}

void apply_key(ScenarioConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "scenario") return;  // handled before defaults are chosen
  if (key == "L")
    cfg.L = std::stod(value);
  else if (key == "N")
    cfg.N = std::stoi(value);
  else if (key == "T")
    cfg.T = std::stod(value);
  else if (key == "Nt")
    cfg.Nt = std::stoi(value);
  else if (key == "C")
    cfg.C = std::stod(value);
  else if (key == "lambda")
    cfg.lambda = std::stod(value);
  else if (key == "mu")
    cfg.mu = std::stod(value);
  else if (key == "A")
    cfg.A = std::stod(value);
  else if (key == "eps")
    cfg.eps = std::stod(value);
  else if (key == "snapshots")
    cfg.snapshots = std::stoi(value);
  else if (key == "dealias")
    cfg.dealias = parse_bool(value);
  else if (key == "out")
    cfg.output_dir = value;
  else
    throw std::runtime_error("unknown key '" + key + "'");
}

void print_summary(const std::string& label, const kbk::RunSummary& s) {
  std::printf("%-22s status=%d", label.c_str(), s.status);
  if (s.status == 0 || s.status == 3) {
    std::printf("  delta=%.3e  tail=%.3e  min_depth=%.4f", s.final_delta,
                s.final_tail, s.final_min_depth);
    if (s.fit)
      std::printf("  C_fit=%+.4f  residual=%.3e", s.fit->C_fit,
                  s.fit->residual);
    else if (s.max_err_eta < 0)
      std::printf("  fit=fail");
    if (s.max_err_eta >= 0)
      std::printf("  err_eta=%.3e  err_v=%.3e", s.max_err_eta, s.max_err_v);
  }
  std::printf("  wall=%.1fs\n", s.wall_seconds);
  if (!s.error.empty()) std::printf("  %s\n", s.error.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Pseudospectral ETDRK4 solver for the good Kaup-Broer-Kupershmidt "
      "Boussinesq system"};

  std::string scenario_str, out_dir, batch_path;
  double L = 0, T = 0, C = 0, lambda = 0, mu = 0, A = 0, eps = 0;
  int N = 0, Nt = 0, snapshots = 0, jobs = 1;
  bool dealias = false;

  auto* o_scenario =
      app.add_option("--scenario", scenario_str,
                     "soliton-test | perturbed-soliton | stationary-perturbed "
                     "| gaussian-v | gaussian-eta | dsw | custom");
  auto* o_L = app.add_option("--L", L, "half-period scale (domain L*[-pi,pi])");
  auto* o_N = app.add_option("--N", N, "DFT modes (power of two)");
  auto* o_T = app.add_option("--T", T, "final time");
  auto* o_Nt = app.add_option("--Nt", Nt, "number of time steps");
  auto* o_C = app.add_option("--C", C, "soliton velocity, |C| < 1");
  auto* o_lambda = app.add_option("--lambda", lambda, "v scaling factor");
  auto* o_mu = app.add_option("--mu", mu, "eta scaling factor");
  auto* o_A = app.add_option("--A", A, "Gaussian amplitude");
  auto* o_eps = app.add_option("--eps", eps, "dispersion scale");
  auto* o_snap = app.add_option("--snapshots", snapshots,
                                "equispaced snapshots after the initial one");
  auto* o_dealias = app.add_flag("--dealias", dealias,
                                 "apply a 2/3-rule filter to the nonlinearity");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_batch =
      app.add_option("--batch", batch_path,
                     "batch file of blank-line-separated key=value stanzas");
  app.add_option("--jobs", jobs, "parallel runs for --batch")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  // Apply every flag the user actually passed on top of a config.
  auto apply_flags = [&](ScenarioConfig& cfg) {
    if (o_L->count()) cfg.L = L;
    if (o_N->count()) cfg.N = N;
    if (o_T->count()) cfg.T = T;
    if (o_Nt->count()) cfg.Nt = Nt;
    if (o_C->count()) cfg.C = C;
    if (o_lambda->count()) cfg.lambda = lambda;
    if (o_mu->count()) cfg.mu = mu;
    if (o_A->count()) cfg.A = A;
    if (o_eps->count()) cfg.eps = eps;
    if (o_snap->count()) cfg.snapshots = snapshots;
    if (o_dealias->count()) cfg.dealias = dealias;
  };

  try {
    if (o_batch->count()) {
      auto stanzas = parse_batch_file(batch_path);
      std::string base = o_out->count() ? out_dir : std::string("out");
      std::vector<ScenarioConfig> cfgs;
      for (size_t i = 0; i < stanzas.size(); ++i) {
        // Precedence: scenario defaults, then the stanza, then CLI flags.
        std::string name = o_scenario->count() ? scenario_str : "soliton-test";
        std::string run_dir;
        for (const auto& [k, v] : stanzas[i]) {
          if (k == "scenario" && !o_scenario->count()) name = v;
          if (k == "out") run_dir = v;
        }
        auto sc = kbk::scenario_from_name(name);
        if (!sc) throw std::runtime_error("unknown scenario '" + name + "'");
        ScenarioConfig cfg = kbk::defaults_for(*sc);
        for (const auto& [k, v] : stanzas[i]) apply_key(cfg, k, v);
        apply_flags(cfg);
        if (run_dir.empty()) {
          char sub[32];
          std::snprintf(sub, sizeof(sub), "run_%03zu", i);
          run_dir = sub;
        }
        // An absolute per-run directory stands alone; a relative one nests
        // under the batch base.
        cfg.output_dir = (std::filesystem::path(base) / run_dir).string();
        cfgs.push_back(cfg);
      }
      auto sums = kbk::run_batch(cfgs, jobs);
      int worst = 0;
      for (size_t i = 0; i < sums.size(); ++i) {
        print_summary(kbk::scenario_name(cfgs[i].scenario) +
                          std::string(" [") + cfgs[i].output_dir + "]",
                      sums[i]);
        if (sums[i].status != 0) worst = 1;
      }
      return worst;
    }

    std::string name = o_scenario->count() ? scenario_str : "soliton-test";
    auto sc = kbk::scenario_from_name(name);
    if (!sc) {
      std::fprintf(stderr, "unknown scenario '%s'\n", name.c_str());
      return 1;
    }
    ScenarioConfig cfg = kbk::defaults_for(*sc);
    apply_flags(cfg);
    if (o_out->count()) cfg.output_dir = out_dir;
    auto sum = kbk::run_scenario(cfg);
    print_summary(name, sum);
    return sum.status;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
