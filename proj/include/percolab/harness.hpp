#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "percolab/census.hpp"
#include "percolab/generators.hpp"
#include "percolab/percolation.hpp"
#include "percolab/theory.hpp"

namespace percolab {

enum class Check {
  giant_fraction,
  giant_edge_ratio,
  second_component,
  tree_fraction,
  largest_isolated_tree,
  forbidden_interval,
  unicyclic_budget,
  complex_small_components,
  mixing_audit,
};

Check check_from_string(std::string_view s);
std::string_view check_name(Check c);

// Pass/fail thresholds. The predictions are asymptotic; these are the
// desk-scale defaults, overridable per config.
struct Tolerances {
  double giant_fraction_abs = 0.02;
  double giant_edge_ratio_abs = 0.03;
  double tree_fraction_abs = 0.02;    // supercritical: |mean - alpha_bar/alpha|
  double tree_fraction_min = 0.99;    // subcritical: per-trial minimum
  double window_pass_fraction = 0.9;  // largest_isolated_tree trials in window
  double complex_zero_fraction = 0.9; // trials with no small complex component
  double unicyclic_budget = 20.0;     // mean vertices on unicyclic components
  std::uint64_t mixing_samples = 200;
};

struct ExperimentConfig {
  GeneratorSpec generator;
  Model model = Model::G_p;
  double alpha = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<Check> checks;
  std::optional<double> omega;  // largest-tree window slack; default 2 ln ln n
  Tolerances tol;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  Vertex giant_size = 0;
  Vertex second_size = 0;
  std::uint64_t giant_edges = 0;
  Vertex largest_isolated_tree = 0;
  double tree_vertex_fraction = 0.0;
  std::uint64_t unicyclic_vertices = 0;
  std::uint64_t complex_small_count = 0;  // complex components below the giant scale
  bool forbidden_interval_hit = false;    // any component size inside the interval
};

struct Aggregate {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
};

struct Verdict {
  Check check = Check::giant_fraction;
  double predicted = 0.0;
  double observed = 0.0;
  double margin = 0.0;  // positive = headroom
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  ExperimentConfig config;
  Vertex n = 0;
  std::uint32_t d = 0;
  TheoryProfile profile;
  std::vector<TrialRow> rows;
  std::map<std::string, Aggregate> aggregates;
  std::vector<Verdict> verdicts;

  bool all_pass() const;
};

// Builds the base graph once, runs `trials` independent percolation + census
// passes (trial seeds derived from the master seed), and evaluates the
// requested checks against the theory profile. Trials run on a worker pool;
// rows are ordered by trial index regardless of completion order.
ExperimentReport run_experiment(const ExperimentConfig& config);

// One report per alpha, same base configuration.
std::vector<ExperimentReport> sweep_alpha(const ExperimentConfig& base,
                                          std::span<const double> alphas);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
nlohmann::json report_to_json(const ExperimentReport& report);
nlohmann::json profile_to_json(const TheoryProfile& p);

// CSV bodies are deterministic: two runs of the same config produce identical
// bytes.
void write_rows_csv(const ExperimentReport& report, std::ostream& out);
void write_verdicts_csv(const ExperimentReport& report, std::ostream& out);
void write_sweep_csv(std::span<const ExperimentReport> reports, std::ostream& out);

// Runs fn(0..count-1) on `workers` threads (0 = hardware concurrency);
// rethrows the first worker exception.
void parallel_trials(std::uint64_t count, unsigned workers,
                     const std::function<void(std::uint64_t)>& fn);

}  // namespace percolab
