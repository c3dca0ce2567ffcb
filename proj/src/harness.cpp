#include "percolab/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "percolab/rng.hpp"
#include "percolab/spectral.hpp"

namespace percolab {

Check check_from_string(std::string_view s) {
  if (s == "giant_fraction") return Check::giant_fraction;
  if (s == "giant_edge_ratio") return Check::giant_edge_ratio;
  if (s == "second_component") return Check::second_component;
  if (s == "tree_fraction") return Check::tree_fraction;
  if (s == "largest_isolated_tree") return Check::largest_isolated_tree;
  if (s == "forbidden_interval") return Check::forbidden_interval;
  if (s == "unicyclic_budget") return Check::unicyclic_budget;
  if (s == "complex_small_components") return Check::complex_small_components;
  if (s == "mixing_audit") return Check::mixing_audit;
  fail(ErrorCode::ConfigInvalid, "unknown check " + std::string(s));
}

std::string_view check_name(Check c) {
  switch (c) {
    case Check::giant_fraction: return "giant_fraction";
    case Check::giant_edge_ratio: return "giant_edge_ratio";
    case Check::second_component: return "second_component";
    case Check::tree_fraction: return "tree_fraction";
    case Check::largest_isolated_tree: return "largest_isolated_tree";
    case Check::forbidden_interval: return "forbidden_interval";
    case Check::unicyclic_budget: return "unicyclic_budget";
    case Check::complex_small_components: return "complex_small_components";
    case Check::mixing_audit: return "mixing_audit";
  }
  return "?";
}

void parallel_trials(std::uint64_t count, unsigned workers,
                     const std::function<void(std::uint64_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) fail(ErrorCode::ConfigInvalid, "trials must be >= 1");
  if (!(cfg.alpha > 0) || std::abs(cfg.alpha - 1.0) < 1e-9)
    fail(ErrorCode::ConfigInvalid, "alpha must be positive and away from 1");
}

Aggregate aggregate_of(const std::vector<double>& xs) {
  Aggregate a;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) a.mean += x;
  a.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.sd = std::sqrt(ss / (n - 1.0));
  }
  return a;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

bool ExperimentReport::all_pass() const {
  for (const Verdict& v : verdicts)
    if (!v.pass) return false;
  return true;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const Graph g = generate(cfg.generator);
  const Vertex n = g.num_vertices();

  ExperimentReport report;
  report.config = cfg;
  report.n = n;
  report.d = g.degree();
  report.profile = theory_profile(cfg.alpha);
  const double gamma = report.profile.gamma;
  // Complex components count as "small" below the giant scale. Subcritically
  // there is no giant to exclude: every complex component counts.
  const double complex_cutoff = cfg.alpha > 1.0 ? gamma * static_cast<double>(n)
                                                : std::numeric_limits<double>::infinity();
  // Degenerate at small n or near-critical alpha; only the checks that need
  // the interval insist on it.
  std::optional<SizeInterval> interval;
  try {
    interval = forbidden_interval(n, cfg.alpha);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WindowEmpty) throw;
  }
  auto require_interval = [&]() -> const SizeInterval& {
    if (!interval)
      fail(ErrorCode::WindowEmpty,
           "forbidden interval degenerate at n = " + std::to_string(n));
    return *interval;
  };

  report.rows.assign(cfg.trials, TrialRow{});
  parallel_trials(cfg.trials, cfg.workers, [&](std::uint64_t t) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, t);
    const PercolationSample sample = percolate_alpha(g, cfg.model, cfg.alpha, seed);
    const ComponentCensus cen = census(g, sample);
    const TreeSpectrum trees = isolated_tree_spectrum(cen);

    TrialRow row;
    row.trial = t;
    row.seed = seed;
    row.giant_size = cen.giant_size;
    row.second_size = cen.second_size;
    row.giant_edges = cen.giant_edges;
    row.largest_isolated_tree = trees.largest_tree_size;
    row.tree_vertex_fraction = trees.tree_vertex_fraction;
    row.unicyclic_vertices = unicyclic_vertices(cen);
    for (const auto& [k, cnt] : cen.complex_by_size)
      if (static_cast<double>(k) < complex_cutoff) row.complex_small_count += cnt;
    if (interval) {
      for (const auto& [k, verts] : cen.vertices_by_size)
        if (static_cast<double>(k) >= interval->lo && static_cast<double>(k) <= interval->hi)
          row.forbidden_interval_hit = true;
    }
    report.rows[t] = row;
  });

  std::vector<double> fractions, ratios, seconds, largest_trees, tree_fracs, unicyclic,
      complex_counts;
  for (const TrialRow& r : report.rows) {
    fractions.push_back(static_cast<double>(r.giant_size) / n);
    ratios.push_back(r.giant_size > 0 ? static_cast<double>(r.giant_edges) / r.giant_size : 0.0);
    seconds.push_back(r.second_size);
    largest_trees.push_back(r.largest_isolated_tree);
    tree_fracs.push_back(r.tree_vertex_fraction);
    unicyclic.push_back(static_cast<double>(r.unicyclic_vertices));
    complex_counts.push_back(static_cast<double>(r.complex_small_count));
  }
  report.aggregates["giant_fraction"] = aggregate_of(fractions);
  report.aggregates["giant_edge_ratio"] = aggregate_of(ratios);
  report.aggregates["second_size"] = aggregate_of(seconds);
  report.aggregates["largest_isolated_tree"] = aggregate_of(largest_trees);
  report.aggregates["tree_vertex_fraction"] = aggregate_of(tree_fracs);
  report.aggregates["unicyclic_vertices"] = aggregate_of(unicyclic);
  report.aggregates["complex_small_count"] = aggregate_of(complex_counts);

  const bool supercritical = cfg.alpha > 1.0;
  for (Check check : cfg.checks) {
    Verdict v;
    v.check = check;
    switch (check) {
      case Check::giant_fraction: {
        v.predicted = report.profile.giant_fraction;
        v.observed = report.aggregates["giant_fraction"].mean;
        v.margin = cfg.tol.giant_fraction_abs - std::abs(v.observed - v.predicted);
        v.pass = v.margin >= 0;
        v.detail = "mean giant fraction vs prediction, tolerance " +
                   fmt_double(cfg.tol.giant_fraction_abs);
        break;
      }
      case Check::giant_edge_ratio: {
        if (!report.profile.giant_edge_ratio)
          fail(ErrorCode::ConfigInvalid, "giant_edge_ratio check needs alpha > 1");
        v.predicted = *report.profile.giant_edge_ratio;
        v.observed = report.aggregates["giant_edge_ratio"].mean;
        v.margin = cfg.tol.giant_edge_ratio_abs - std::abs(v.observed - v.predicted);
        v.pass = v.margin >= 0;
        v.detail = "mean giant edges/vertices vs prediction, tolerance " +
                   fmt_double(cfg.tol.giant_edge_ratio_abs);
        break;
      }
      case Check::second_component: {
        // Supercritical: second component; subcritical: the largest one.
        const SizeInterval& iv = require_interval();
        double worst = 0.0;
        for (const TrialRow& r : report.rows)
          worst = std::max(worst,
                           static_cast<double>(supercritical ? r.second_size : r.giant_size));
        v.predicted = iv.lo;
        v.observed = worst;
        v.margin = iv.lo - worst;
        v.pass = worst < iv.lo;
        v.detail = supercritical ? "max second-component size < ln(n)/(alpha gamma)"
                                 : "max component size < ln(n)/(alpha gamma)";
        break;
      }
      case Check::tree_fraction: {
        if (supercritical) {
          v.predicted = report.profile.f_alpha;
          v.observed = report.aggregates["tree_vertex_fraction"].mean;
          v.margin = cfg.tol.tree_fraction_abs - std::abs(v.observed - v.predicted);
          v.pass = v.margin >= 0;
          v.detail = "mean tree-vertex fraction vs alpha_bar/alpha, tolerance " +
                     fmt_double(cfg.tol.tree_fraction_abs);
        } else {
          double lowest = 1.0;
          for (const TrialRow& r : report.rows) lowest = std::min(lowest, r.tree_vertex_fraction);
          v.predicted = cfg.tol.tree_fraction_min;
          v.observed = lowest;
          v.margin = lowest - cfg.tol.tree_fraction_min;
          v.pass = v.margin >= 0;
          v.detail = "per-trial tree-vertex fraction minimum";
        }
        break;
      }
      case Check::largest_isolated_tree: {
        const double omega = cfg.omega ? *cfg.omega : default_omega(n);
        const TreeWindow w = largest_tree_window(n, cfg.alpha, omega);
        std::uint64_t inside = 0;
        for (const TrialRow& r : report.rows)
          if (r.largest_isolated_tree >= w.lo && r.largest_isolated_tree <= w.hi) ++inside;
        v.predicted = cfg.tol.window_pass_fraction;
        v.observed = static_cast<double>(inside) / cfg.trials;
        v.margin = v.observed - v.predicted;
        v.pass = v.margin >= 0;
        v.detail = "fraction of trials with largest tree in [" + fmt_double(w.lo) + ", " +
                   fmt_double(w.hi) + "]";
        break;
      }
      case Check::forbidden_interval: {
        const SizeInterval& iv = require_interval();
        std::uint64_t hits = 0;
        for (const TrialRow& r : report.rows) hits += r.forbidden_interval_hit ? 1 : 0;
        v.predicted = 0.0;
        v.observed = static_cast<double>(hits);
        v.margin = -v.observed;
        v.pass = hits == 0;
        v.detail = "trials with a component size in [" + fmt_double(iv.lo) + ", " +
                   fmt_double(iv.hi) + "]";
        break;
      }
      case Check::unicyclic_budget: {
        v.predicted = cfg.tol.unicyclic_budget;
        v.observed = report.aggregates["unicyclic_vertices"].mean;
        v.margin = v.predicted - v.observed;
        v.pass = v.margin >= 0;
        v.detail = "mean vertices on unicyclic components";
        break;
      }
      case Check::complex_small_components: {
        std::uint64_t clean = 0;
        for (const TrialRow& r : report.rows)
          if (r.complex_small_count == 0) ++clean;
        v.predicted = cfg.tol.complex_zero_fraction;
        v.observed = static_cast<double>(clean) / cfg.trials;
        v.margin = v.observed - v.predicted;
        v.pass = v.margin >= 0;
        v.detail = "fraction of trials with no small complex component";
        break;
      }
      case Check::mixing_audit: {
        // Estimated lambda, inflated slightly so an unconverged low estimate
        // cannot flag a spurious violation.
        const SpectralEstimate est = estimate_lambda(g);
        const double lambda = est.lambda * (1.0 + 1e-6) + 1e-12;
        const MixingAudit audit =
            mixing_audit(g, cfg.tol.mixing_samples, derive_seed(cfg.master_seed, 1u << 20), lambda);
        v.predicted = 0.0;
        v.observed = static_cast<double>(audit.violations);
        v.margin = 1.0 - audit.worst_ratio;
        v.pass = audit.violations == 0;
        v.detail = "edge-discrepancy violations over " + std::to_string(audit.samples) +
                   " sampled pairs, worst ratio " + fmt_double(audit.worst_ratio);
        break;
      }
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

std::vector<ExperimentReport> sweep_alpha(const ExperimentConfig& base,
                                          std::span<const double> alphas) {
  std::vector<ExperimentReport> reports;
  reports.reserve(alphas.size());
  const Vertex n = spec_vertex_count(base.generator);
  for (double alpha : alphas) {
    ExperimentConfig cfg = base;
    cfg.alpha = alpha;
    if (!(alpha > 0) || std::abs(alpha - 1.0) < 1e-9)
      fail(ErrorCode::ConfigInvalid, "sweep alpha must be positive and away from 1");
    // Keep only the checks defined at this alpha and scale.
    cfg.checks.clear();
    for (Check c : base.checks) {
      if (c == Check::giant_edge_ratio && alpha < 1.0) continue;
      if (c == Check::second_component || c == Check::forbidden_interval) {
        try {
          forbidden_interval(n, alpha);
        } catch (const Error&) {
          continue;
        }
      }
      cfg.checks.push_back(c);
    }
    reports.push_back(run_experiment(cfg));
  }
  return reports;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig cfg;
    if (j.value("spec_version", 1) != 1)
      fail(ErrorCode::ConfigInvalid, "unsupported spec_version");
    const auto& gen = j.at("generator");
    cfg.generator.family = family_from_string(gen.at("family").get<std::string>());
    cfg.generator.n = gen.value("n", 0u);
    cfg.generator.d = gen.value("d", 0u);
    cfg.generator.q = gen.value("q", std::uint64_t{0});
    cfg.generator.seed = gen.value("seed", std::uint64_t{0});
    cfg.model = model_from_string(j.value("model", "G_p"));
    cfg.alpha = j.at("alpha").get<double>();
    cfg.trials = j.at("trials").get<std::uint64_t>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& c : j.value("checks", nlohmann::json::array()))
      cfg.checks.push_back(check_from_string(c.get<std::string>()));
    if (j.contains("omega")) cfg.omega = j.at("omega").get<double>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<unsigned>();
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      cfg.tol.giant_fraction_abs = t.value("giant_fraction_abs", cfg.tol.giant_fraction_abs);
      cfg.tol.giant_edge_ratio_abs = t.value("giant_edge_ratio_abs", cfg.tol.giant_edge_ratio_abs);
      cfg.tol.tree_fraction_abs = t.value("tree_fraction_abs", cfg.tol.tree_fraction_abs);
      cfg.tol.tree_fraction_min = t.value("tree_fraction_min", cfg.tol.tree_fraction_min);
      cfg.tol.window_pass_fraction = t.value("window_pass_fraction", cfg.tol.window_pass_fraction);
      cfg.tol.complex_zero_fraction =
          t.value("complex_zero_fraction", cfg.tol.complex_zero_fraction);
      cfg.tol.unicyclic_budget = t.value("unicyclic_budget", cfg.tol.unicyclic_budget);
      cfg.tol.mixing_samples = t.value("mixing_samples", cfg.tol.mixing_samples);
    }
    validate(cfg);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigInvalid, e.what());
  }
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json gen{{"family", std::string(family_name(cfg.generator.family))}};
  if (cfg.generator.n) gen["n"] = cfg.generator.n;
  if (cfg.generator.d) gen["d"] = cfg.generator.d;
  if (cfg.generator.q) gen["q"] = cfg.generator.q;
  gen["seed"] = cfg.generator.seed;
  nlohmann::json checks = nlohmann::json::array();
  for (Check c : cfg.checks) checks.push_back(std::string(check_name(c)));
  nlohmann::json j{
      {"spec_version", 1},
      {"generator", gen},
      {"model", std::string(model_name(cfg.model))},
      {"alpha", cfg.alpha},
      {"trials", cfg.trials},
      {"master_seed", cfg.master_seed},
      {"checks", checks},
      {"tolerances",
       {{"giant_fraction_abs", cfg.tol.giant_fraction_abs},
        {"giant_edge_ratio_abs", cfg.tol.giant_edge_ratio_abs},
        {"tree_fraction_abs", cfg.tol.tree_fraction_abs},
        {"tree_fraction_min", cfg.tol.tree_fraction_min},
        {"window_pass_fraction", cfg.tol.window_pass_fraction},
        {"complex_zero_fraction", cfg.tol.complex_zero_fraction},
        {"unicyclic_budget", cfg.tol.unicyclic_budget},
        {"mixing_samples", cfg.tol.mixing_samples}}},
  };
  if (cfg.omega) j["omega"] = *cfg.omega;
  if (cfg.workers) j["workers"] = cfg.workers;
  return j;
}

nlohmann::json profile_to_json(const TheoryProfile& p) {
  nlohmann::json j{
      {"alpha", p.alpha},
      {"gamma", p.gamma},
      {"zeta", p.zeta},
      {"f_alpha", p.f_alpha},
      {"giant_fraction", p.giant_fraction},
  };
  j["alpha_bar"] = p.alpha_bar ? nlohmann::json(*p.alpha_bar) : nlohmann::json(nullptr);
  j["giant_edge_ratio"] =
      p.giant_edge_ratio ? nlohmann::json(*p.giant_edge_ratio) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TrialRow& r : report.rows) {
    rows.push_back({{"trial", r.trial},
                    {"seed", r.seed},
                    {"giant_size", r.giant_size},
                    {"second_size", r.second_size},
                    {"giant_edges", r.giant_edges},
                    {"largest_isolated_tree", r.largest_isolated_tree},
                    {"tree_vertex_fraction", r.tree_vertex_fraction},
                    {"unicyclic_vertices", r.unicyclic_vertices},
                    {"complex_small_count", r.complex_small_count}});
  }
  nlohmann::json aggregates;
  for (const auto& [name, agg] : report.aggregates)
    aggregates[name] = {{"mean", agg.mean}, {"sd", agg.sd}};
  nlohmann::json verdicts = nlohmann::json::array();
  for (const Verdict& v : report.verdicts)
    verdicts.push_back({{"check", std::string(check_name(v.check))},
                        {"predicted", v.predicted},
                        {"observed", v.observed},
                        {"margin", v.margin},
                        {"pass", v.pass},
                        {"detail", v.detail}});
  return nlohmann::json{
      {"meta",
       {{"rng", std::string(Rng::name())},
        {"seed_split", std::string(Rng::split_rule())}}},
      {"config", config_to_json(report.config)},
      {"n", report.n},
      {"d", report.d},
      {"theory", profile_to_json(report.profile)},
      {"aggregates", aggregates},
      {"rows", rows},
      {"verdicts", verdicts},
      {"all_pass", report.all_pass()},
  };
}

void write_rows_csv(const ExperimentReport& report, std::ostream& out) {
  out << "trial,seed,giant_size,second_size,giant_edges,largest_isolated_tree,"
         "tree_vertex_fraction,unicyclic_vertices,complex_small_count\n";
  for (const TrialRow& r : report.rows) {
    out << r.trial << ',' << r.seed << ',' << r.giant_size << ',' << r.second_size << ','
        << r.giant_edges << ',' << r.largest_isolated_tree << ','
        << fmt_double(r.tree_vertex_fraction) << ',' << r.unicyclic_vertices << ','
        << r.complex_small_count << '\n';
  }
}

void write_verdicts_csv(const ExperimentReport& report, std::ostream& out) {
  out << "check,predicted,observed,margin,pass\n";
  for (const Verdict& v : report.verdicts) {
    out << check_name(v.check) << ',' << fmt_double(v.predicted) << ',' << fmt_double(v.observed)
        << ',' << fmt_double(v.margin) << ',' << (v.pass ? "true" : "false") << '\n';
  }
}

void write_sweep_csv(std::span<const ExperimentReport> reports, std::ostream& out) {
  out << "alpha,predicted_fraction,observed_mean,observed_sd\n";
  for (const ExperimentReport& r : reports) {
    const Aggregate agg = r.aggregates.at("giant_fraction");
    out << fmt_double(r.config.alpha) << ',' << fmt_double(r.profile.giant_fraction) << ','
        << fmt_double(agg.mean) << ',' << fmt_double(agg.sd) << '\n';
  }
}

}  // namespace percolab
