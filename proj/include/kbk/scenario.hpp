// Canned experiment configurations, the scenario runner, and the batch
// driver. Each run writes a diagnostics CSV, equispaced field snapshots,
// and waterfall matrices into its own output directory.
#ifndef KBK_SCENARIO_HPP
#define KBK_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "kbk/diagnostics.hpp"

namespace kbk {

enum class Scenario {
  soliton_test,         // exact soliton, compared against the closed form
  perturbed_soliton,    // (lambda*eta, mu*v) scaling of the soliton
  stationary_perturbed, // same scaling applied to the stationary solution
  gaussian_v,           // eta = 0, v = A exp(-x^2)
  gaussian_eta,         // eta = A exp(-x^2), v = 0
  dsw,                  // small-dispersion run, eta-Gaussian data
  custom                // eps-scaled soliton with explicit parameters
};

const char* scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(const std::string& name);

struct ScenarioConfig {
  Scenario scenario = Scenario::soliton_test;
  double L = 15;
  int N = 2048;
  double T = 1;
  int Nt = 4000;
  double C = 0.8;
  double lambda = 1;
  double mu = 1;
  double A = 3;
  double eps = 1;
  int snapshots = 40;  // equispaced snapshots after the initial one
  bool dealias = false;
  std::string output_dir = "out";
};

// Baked-in defaults for every scenario (grid, horizon, amplitudes).
ScenarioConfig defaults_for(Scenario s);

struct RunSummary {
  int status = 0;  // 0 ok; 1 bad config; 2 blow-up; 3 unresolved tail
  std::string error;
  double final_delta = 0;
  double final_tail = 0;
  double final_min_depth = 0;
  std::optional<SolitonFit> fit;
  double max_err_eta = -1, max_err_v = -1;  // soliton-test only
  double wall_seconds = 0;
  std::string output_dir;
};

// Run one configuration; never throws (errors land in the summary).
RunSummary run_scenario(const ScenarioConfig& cfg);

// Run many configurations (optionally on several threads); summaries come
// back in input order and per-run failures do not abort the rest.
std::vector<RunSummary> run_batch(const std::vector<ScenarioConfig>& cfgs,
                                  int jobs = 1);

// Format a double with 17 significant digits (bit-stable round trip).
std::string fmt17(double x);

}  // namespace kbk

#endif
