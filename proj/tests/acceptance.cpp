// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the observed values. Statistical criteria run on pinned seeds so
// the whole suite is deterministic.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "oracles.hpp"
#include "percolab/census.hpp"
#include "percolab/generators.hpp"
#include "percolab/harness.hpp"
#include "percolab/percolation.hpp"
#include "percolab/rng.hpp"
#include "percolab/spectral.hpp"
#include "percolab/theory.hpp"

using namespace percolab;

namespace {

void criterion_line(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[criterion %02d] %-38s %s  %s\n", idx, name, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct TimedReport {
  ExperimentReport report;
  double elapsed_s = 0.0;
};

// Criteria 1-5: random 20-regular graph on 50,000 vertices, G_p, 10 trials
// at alpha = 2 and alpha = 0.5.
const TimedReport& runs_alpha2() {
  static const TimedReport timed = [] {
    ExperimentConfig cfg;
    cfg.generator = {Family::random_regular, 50000, 20, 0, 20250811};
    cfg.model = Model::G_p;
    cfg.alpha = 2.0;
    cfg.trials = 10;
    cfg.master_seed = 1001;
    cfg.checks = {Check::giant_fraction, Check::giant_edge_ratio, Check::second_component,
                  Check::tree_fraction, Check::forbidden_interval};
    const auto start = std::chrono::steady_clock::now();
    TimedReport t{run_experiment(cfg), 0.0};
    t.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return t;
  }();
  return timed;
}

const ExperimentReport& runs_alpha05() {
  static const ExperimentReport report = [] {
    ExperimentConfig cfg;
    cfg.generator = {Family::random_regular, 50000, 20, 0, 20250811};
    cfg.model = Model::G_p;
    cfg.alpha = 0.5;
    cfg.trials = 10;
    cfg.master_seed = 1002;
    cfg.checks = {Check::second_component, Check::tree_fraction, Check::forbidden_interval};
    return run_experiment(cfg);
  }();
  return report;
}

// Criterion 6: random 450-regular graph on 100,000 vertices (d >> log^2 n).
const ExperimentReport& runs_d450() {
  static const ExperimentReport report = [] {
    ExperimentConfig cfg;
    cfg.generator = {Family::random_regular, 100000, 450, 0, 20250812};
    cfg.model = Model::G_p;
    cfg.alpha = 2.0;
    cfg.trials = 20;
    cfg.master_seed = 1003;
    cfg.omega = 10.0;
    cfg.checks = {Check::largest_isolated_tree};
    return run_experiment(cfg);
  }();
  return report;
}

// Criteria 7-8: K_2000 at alpha = 2, 20 trials.
const ExperimentReport& runs_k2000() {
  static const ExperimentReport report = [] {
    ExperimentConfig cfg;
    cfg.generator = {Family::complete, 2000, 0, 0, 0};
    cfg.model = Model::G_p;
    cfg.alpha = 2.0;
    cfg.trials = 20;
    cfg.master_seed = 1004;
    cfg.checks = {Check::unicyclic_budget, Check::complex_small_components};
    return run_experiment(cfg);
  }();
  return report;
}

bool verdict_pass(const ExperimentReport& r, Check c) {
  for (const Verdict& v : r.verdicts)
    if (v.check == c) return v.pass;
  return false;
}

}  // namespace

TEST_CASE("criterion 01: supercritical giant size") {
  const TimedReport& t = runs_alpha2();
  const double observed = t.report.aggregates.at("giant_fraction").mean;
  const bool in_band = observed >= 0.777 && observed <= 0.817;
  const bool in_time = t.elapsed_s < 60.0;
  criterion_line(1, "supercritical giant fraction", in_band && in_time,
                 "mean=" + fmt(observed) + " window=[0.777,0.817] predicted=0.796813 runtime=" +
                     fmt(t.elapsed_s) + "s");
  CHECK(in_band);
  CHECK(in_time);
  CHECK(verdict_pass(t.report, Check::giant_fraction));
}

TEST_CASE("criterion 02: giant edge/vertex ratio") {
  const TimedReport& t = runs_alpha2();
  const double observed = t.report.aggregates.at("giant_edge_ratio").mean;
  const bool pass = observed >= 1.173 && observed <= 1.233;
  criterion_line(2, "giant edge/vertex ratio", pass,
                 "mean=" + fmt(observed) + " window=[1.173,1.233] predicted=1.203188");
  CHECK(pass);
  CHECK(verdict_pass(t.report, Check::giant_edge_ratio));
}

TEST_CASE("criterion 03: subcritical smallness") {
  const ExperimentReport& r = runs_alpha05();
  const SizeInterval iv = forbidden_interval(r.n, 0.5);
  Vertex worst = 0;
  for (const TrialRow& row : r.rows) worst = std::max(worst, row.giant_size);
  const bool pass = worst < iv.lo;
  criterion_line(3, "subcritical max component", pass,
                 "max=" + std::to_string(worst) + " bound=ln(n)/(alpha gamma)=" + fmt(iv.lo));
  CHECK(pass);
  CHECK(verdict_pass(r, Check::second_component));
}

TEST_CASE("criterion 04: giant uniqueness / forbidden interval") {
  const TimedReport& t = runs_alpha2();
  const SizeInterval iv = forbidden_interval(t.report.n, 2.0);
  Vertex worst_second = 0;
  std::uint64_t interval_hits = 0;
  for (const TrialRow& row : t.report.rows) {
    worst_second = std::max(worst_second, row.second_size);
    interval_hits += row.forbidden_interval_hit ? 1 : 0;
  }
  const bool pass = worst_second < iv.lo && interval_hits == 0;
  criterion_line(4, "second component / forbidden interval", pass,
                 "max second=" + std::to_string(worst_second) + " bound=" + fmt(iv.lo) +
                     " sizes in [" + fmt(iv.lo) + "," + fmt(iv.hi) +
                     "]: " + std::to_string(interval_hits) + " trials");
  CHECK(pass);
  CHECK(verdict_pass(t.report, Check::second_component));
  CHECK(verdict_pass(t.report, Check::forbidden_interval));
}

TEST_CASE("criterion 05: tree-vertex fraction") {
  const ExperimentReport& sub = runs_alpha05();
  double sub_min = 1.0;
  for (const TrialRow& row : sub.rows) sub_min = std::min(sub_min, row.tree_vertex_fraction);
  const bool sub_pass = sub_min >= 0.99;

  const TimedReport& super = runs_alpha2();
  const double super_mean = super.report.aggregates.at("tree_vertex_fraction").mean;
  const bool super_pass = std::abs(super_mean - 0.20318786997998) <= 0.02;

  criterion_line(5, "tree-vertex fraction", sub_pass && super_pass,
                 "subcritical min=" + fmt(sub_min) + " (>=0.99), supercritical mean=" +
                     fmt(super_mean) + " (0.203188 +/- 0.02)");
  CHECK(sub_pass);
  CHECK(super_pass);
  CHECK(verdict_pass(sub, Check::tree_fraction));
  CHECK(verdict_pass(super.report, Check::tree_fraction));
}

TEST_CASE("criterion 06: largest isolated tree window") {
  const ExperimentReport& r = runs_d450();
  const TreeWindow w = largest_tree_window(r.n, 2.0, 10.0);
  std::uint64_t inside = 0;
  for (const TrialRow& row : r.rows)
    if (row.largest_isolated_tree >= w.lo && row.largest_isolated_tree <= w.hi) ++inside;
  const bool pass = inside >= 18;
  criterion_line(6, "largest isolated tree in window", pass,
                 std::to_string(inside) + "/20 trials in [" + fmt(w.lo) + "," + fmt(w.hi) +
                     "] center=" + fmt(w.center));
  CHECK(pass);
  CHECK(verdict_pass(r, Check::largest_isolated_tree));
}

TEST_CASE("criterion 07: unicyclic budget") {
  const ExperimentReport& r = runs_k2000();
  const double mean = r.aggregates.at("unicyclic_vertices").mean;
  const bool pass = mean <= 20.0;
  criterion_line(7, "vertices on unicyclic components", pass,
                 "mean=" + fmt(mean) + " budget=20");
  CHECK(pass);
  CHECK(verdict_pass(r, Check::unicyclic_budget));
}

TEST_CASE("criterion 08: no small complex components") {
  const ExperimentReport& r = runs_k2000();
  std::uint64_t clean = 0;
  for (const TrialRow& row : r.rows)
    if (row.complex_small_count == 0) ++clean;
  const bool pass = clean >= 18;
  criterion_line(8, "small complex components absent", pass,
                 std::to_string(clean) + "/20 trials with none");
  CHECK(pass);
  CHECK(verdict_pass(r, Check::complex_small_components));
}

TEST_CASE("criterion 09: edge-discrepancy exactness") {
  const Graph paley = gen_paley(101);
  const double lambda = (1.0 + std::sqrt(101.0)) / 2.0;
  const MixingAudit audit = mixing_audit(paley, 1000, 1006, lambda);

  const Graph k50 = gen_complete(50);
  std::vector<Vertex> all(50);
  for (Vertex u = 0; u < 50; ++u) all[u] = u;
  const MixingReport full = mixing_check(k50, all, all, 1.0);

  const bool pass = audit.violations == 0 && full.discrepancy == 0.0;
  criterion_line(9, "edge-discrepancy bound", pass,
                 "paley(101): 1000 pairs, violations=" + std::to_string(audit.violations) +
                     ", worst ratio=" + fmt(audit.worst_ratio) +
                     "; K_50 B=C=V discrepancy=" + fmt(full.discrepancy));
  CHECK(audit.violations == 0);
  CHECK(full.discrepancy == 0.0);
  CHECK(full.satisfied);
}

TEST_CASE("criterion 10: tree-count oracle against the bounds") {
  struct Fixture {
    Graph g;
    const char* name;
    unsigned k_lo, k_hi;
  };
  const Fixture fixtures[] = {
      {gen_complete(8), "K_8", 2, 5},
      {gen_paley(13), "paley(13)", 2, 4},
      {gen_petersen(), "petersen", 2, 4},
  };
  bool pass = true;
  std::string detail;
  for (const Fixture& f : fixtures) {
    const double n = f.g.num_vertices();
    const double d = f.g.degree();
    for (unsigned k = f.k_lo; k <= f.k_hi; ++k) {
      const std::uint64_t t = count_trees_tk(f.g, k);
      double kfact = 1.0;
      for (unsigned i = 2; i <= k; ++i) kfact *= i;
      const double upper = n * std::pow(k, k - 2.0) * std::pow(d, k - 1.0) / kfact;
      if (static_cast<double>(t) > upper) pass = false;
      if (k < d) {
        const double lower = n * std::pow(k, k - 2.0) * std::pow(d - k, k - 1.0) / kfact;
        if (static_cast<double>(t) < lower) pass = false;
      }
    }
  }
  // Cayley cross-check on the complete graph.
  const Graph k8 = gen_complete(8);
  for (unsigned k = 2; k <= 5; ++k) {
    const std::uint64_t expected =
        static_cast<std::uint64_t>(std::llround(oracle::binomial(8, k) * std::pow(k, k - 2.0)));
    if (count_trees_tk(k8, k) != expected) pass = false;
  }
  criterion_line(10, "tree counts within degree bounds", pass,
                 "K_8 k=2..5, paley(13) k=2..4, petersen k=2..4; Cayley check on K_8");
  CHECK(pass);
}

TEST_CASE("criterion 11: expectation sandwich via Monte Carlo") {
  const Graph g = gen_complete(2000);
  const std::uint64_t n = g.num_vertices();
  const std::uint32_t d = g.degree();
  const double alpha = 0.5;
  const double p = alpha / d;
  const std::uint64_t trials = 10000;
  constexpr unsigned kMax = 4;

  // per-trial values, indexed [k-1][trial]
  std::vector<std::vector<double>> c_vals(kMax, std::vector<double>(trials, 0.0));
  std::vector<std::vector<double>> t_vals(kMax, std::vector<double>(trials, 0.0));
  parallel_trials(trials, 0, [&](std::uint64_t t) {
    const ComponentCensus c = census(g, percolate_p(g, p, derive_seed(1005, t)));
    for (unsigned k = 1; k <= kMax; ++k) {
      const auto ci = c.vertices_by_size.find(k);
      if (ci != c.vertices_by_size.end()) c_vals[k - 1][t] = static_cast<double>(ci->second);
      const auto ti = c.tree_vertices_by_size.find(k);
      if (ti != c.tree_vertices_by_size.end()) t_vals[k - 1][t] = static_cast<double>(ti->second);
    }
  });

  auto mean_se = [&](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::pair<double, double>{mean,
                                     std::sqrt(ss / (xs.size() - 1.0)) /
                                         std::sqrt(static_cast<double>(xs.size()))};
  };

  bool pass = true;
  std::string detail;
  for (unsigned k = 1; k <= kMax; ++k) {
    const auto [c_mean, c_se] = mean_se(c_vals[k - 1]);
    const auto [t_mean, t_se] = mean_se(t_vals[k - 1]);
    const double upper = expected_ck_upper(n, d, 1.0, alpha, k);  // lambda(K_n) = 1
    const double lower = expected_tk_lower(n, d, alpha, k);
    const bool upper_ok = c_mean <= upper + 3.0 * c_se;
    const bool lower_ok = t_mean >= lower - 3.0 * t_se;
    pass = pass && upper_ok && lower_ok;
    if (k == 1)
      detail = "k=1: C=" + fmt(c_mean) + "<=" + fmt(upper) + ", T=" + fmt(t_mean) +
               ">=" + fmt(lower);
  }
  criterion_line(11, "expectation bounds (10^4 trials)", pass, detail + " (k=1..4 all checked)");
  CHECK(pass);
}

TEST_CASE("criterion 12: analytic residuals") {
  bool pass = true;
  double worst_dual = 0.0, worst_gamma = 0.0, worst_f = 0.0;
  for (double alpha : {1.1, 1.5, 2.0, 3.0, 5.0}) {
    const TheoryProfile prof = theory_profile(alpha);
    const TheoryResiduals res = theory_residuals(prof);
    worst_dual = std::max(worst_dual, res.dual);
    worst_gamma = std::max(worst_gamma, res.gamma);
    if (res.dual >= 1e-12 || res.gamma >= 1e-12) pass = false;
  }
  for (double alpha : {0.1, 0.5, 0.9, 1.5, 2.0, 4.0}) {
    const double diff = std::abs(f_series(alpha) - f_closed(alpha));
    worst_f = std::max(worst_f, diff);
    if (diff >= 1e-9) pass = false;
  }
  criterion_line(12, "analytic residuals", pass,
                 "dual<=" + fmt(worst_dual) + " gamma<=" + fmt(worst_gamma) +
                     " |series-closed|<=" + fmt(worst_f));
  CHECK(pass);
}

TEST_CASE("criterion 13: census equals brute-force components") {
  std::uint64_t graphs_checked = 0, masks_checked = 0;
  bool pass = true;
  for (std::uint64_t gs = 0; graphs_checked < 20; ++gs) {
    const Vertex n = 4 + static_cast<Vertex>((3 * gs) % 9);  // 4..12
    const std::uint32_t d = 2 + static_cast<std::uint32_t>(gs % 4);
    if (static_cast<std::uint64_t>(n) * d % 2 != 0 || d >= n) continue;
    ++graphs_checked;
    const Graph g = gen_random_regular(n, d, 5000 + gs);
    for (std::uint64_t ms = 0; ms < 10; ++ms) {
      const PercolationSample s =
          percolate_p(g, 0.05 + 0.09 * static_cast<double>(ms), derive_seed(6000 + gs, ms));
      if (!oracle::census_equal(census(g, s), oracle::census_by_dfs(g, s.mask))) pass = false;
      ++masks_checked;
    }
  }
  criterion_line(13, "census vs DFS oracle", pass,
                 std::to_string(masks_checked) + " masks over " +
                     std::to_string(graphs_checked) + " graphs, n <= 12");
  CHECK(pass);
  CHECK(masks_checked == 200);
}
