// percolab command line: graph generation, spectral estimates, percolation
// censuses and config-driven experiments. See README for examples.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "percolab/census.hpp"
#include "percolab/generators.hpp"
#include "percolab/harness.hpp"
#include "percolab/percolation.hpp"
#include "percolab/rng.hpp"
#include "percolab/spectral.hpp"
#include "percolab/theory.hpp"

namespace {

using nlohmann::json;
using namespace percolab;

json census_to_json(const ComponentCensus& c) {
  auto hist = [](const std::map<Vertex, std::uint64_t>& m) {
    json arr = json::array();
    for (const auto& [k, v] : m) arr.push_back({k, v});
    return arr;
  };
  return json{
      {"n", c.n},
      {"retained", c.retained},
      {"giant_size", c.giant_size},
      {"second_size", c.second_size},
      {"giant_edges", c.giant_edges},
      {"C", hist(c.vertices_by_size)},
      {"T", hist(c.tree_vertices_by_size)},
      {"N", hist(c.trees_by_size)},
      {"U", hist(c.unicyclic_by_size)},
      {"COMP", hist(c.complex_by_size)},
  };
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

int run(int argc, char** argv) {
  CLI::App app{"graph percolation laboratory"};
  app.require_subcommand(1);

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "write a graph file");
  std::string family_str = "random_regular", out_path;
  GeneratorSpec gspec;
  generate_cmd->add_option("--family", family_str, "random_regular|paley|complete|cycle|petersen");
  generate_cmd->add_option("--n", gspec.n, "vertex count");
  generate_cmd->add_option("--d", gspec.d, "degree (random_regular)");
  generate_cmd->add_option("--q", gspec.q, "prime, q = 1 mod 4 (paley)");
  generate_cmd->add_option("--seed", gspec.seed, "generator seed");
  generate_cmd->add_option("--out", out_path, "output graph file")->required();

  // spectra
  auto* spectra_cmd = app.add_subcommand("spectra", "estimate lambda");
  std::string spectra_graph;
  double tol = 1e-8;
  std::uint64_t max_iter = 10000;
  bool exact = false;
  spectra_cmd->add_option("--graph", spectra_graph, "graph file")->required();
  spectra_cmd->add_option("--tol", tol, "convergence tolerance");
  spectra_cmd->add_option("--max-iter", max_iter, "iteration cap");
  spectra_cmd->add_flag("--exact", exact, "force the dense solver");

  // mixing
  auto* mixing_cmd = app.add_subcommand("mixing", "edge-discrepancy audit");
  std::string mixing_graph;
  std::uint64_t mixing_samples = 200, mixing_seed = 0;
  double mixing_lambda = -1.0;
  mixing_cmd->add_option("--graph", mixing_graph, "graph file")->required();
  mixing_cmd->add_option("--samples", mixing_samples, "number of (B,C) pairs");
  mixing_cmd->add_option("--seed", mixing_seed, "sampling seed");
  mixing_cmd->add_option("--lambda", mixing_lambda, "known lambda bound (default: estimate)");

  // census
  auto* census_cmd = app.add_subcommand("census", "percolate and count components");
  std::string census_graph, census_model = "p", mask_out;
  double census_param = 0.0;
  std::uint64_t census_seed = 0;
  bool census_json = false;
  census_cmd->add_option("--graph", census_graph, "graph file")->required();
  census_cmd->add_option("--model", census_model, "p (probability) or m (edge count)");
  census_cmd->add_option("--param", census_param, "p in [0,1] or m")->required();
  census_cmd->add_option("--seed", census_seed, "percolation seed");
  census_cmd->add_flag("--json", census_json, "emit the full census as JSON");
  census_cmd->add_option("--mask-out", mask_out, "also dump the retention mask");

  // theory
  auto* theory_cmd = app.add_subcommand("theory", "analytic profile for alpha");
  double theory_alpha = 0.0, theory_omega = -1.0;
  std::uint64_t theory_n = 0;
  theory_cmd->add_option("--alpha", theory_alpha, "retention rate alpha = p*d")->required();
  theory_cmd->add_option("--n", theory_n, "evaluate n-dependent windows");
  theory_cmd->add_option("--omega", theory_omega, "largest-tree window slack");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a config-driven experiment");
  std::string exp_config, exp_out;
  unsigned exp_workers = 0;
  exp_cmd->add_option("--config", exp_config, "JSON config file")->required();
  exp_cmd->add_option("--out", exp_out, "output directory")->required();
  exp_cmd->add_option("--workers", exp_workers, "worker threads (0 = all cores)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment per alpha");
  std::string sweep_config, sweep_out, sweep_alphas;
  unsigned sweep_workers = 0;
  sweep_cmd->add_option("--config", sweep_config, "JSON config file")->required();
  sweep_cmd->add_option("--alphas", sweep_alphas, "comma-separated alpha values")->required();
  sweep_cmd->add_option("--out", sweep_out, "output directory")->required();
  sweep_cmd->add_option("--workers", sweep_workers, "worker threads");

  CLI11_PARSE(app, argc, argv);

  if (generate_cmd->parsed()) {
    gspec.family = family_from_string(family_str);
    const Graph g = generate(gspec);
    save_graph(g, out_path);
    std::cout << "n=" << g.num_vertices() << " d=" << g.degree() << " m=" << g.num_edges()
              << " -> " << out_path << '\n';
    return 0;
  }

  if (spectra_cmd->parsed()) {
    const Graph g = load_graph(spectra_graph);
    const SpectralEstimate est = exact ? dense_lambda(g) : estimate_lambda(g, tol, max_iter);
    json j{{"lambda", est.lambda},
           {"method", est.method == SpectralMethod::dense_exact ? "dense_exact" : "power_deflated"},
           {"iterations", est.iterations},
           {"residual", est.residual},
           {"converged", est.converged}};
    std::cout << j.dump(2) << '\n';
    return est.converged ? 0 : 1;
  }

  if (mixing_cmd->parsed()) {
    const Graph g = load_graph(mixing_graph);
    double lambda = mixing_lambda;
    if (lambda < 0) {
      const SpectralEstimate est = estimate_lambda(g);
      lambda = est.lambda * (1.0 + 1e-6) + 1e-12;
    }
    const MixingAudit audit = mixing_audit(g, mixing_samples, mixing_seed, lambda);
    json j{{"lambda", lambda},
           {"samples", audit.samples},
           {"violations", audit.violations},
           {"worst_ratio", audit.worst_ratio},
           {"worst",
            {{"b_size", audit.worst.b_size},
             {"c_size", audit.worst.c_size},
             {"e_bc", audit.worst.e_bc},
             {"expected", audit.worst.expected},
             {"bound", audit.worst.bound},
             {"discrepancy", audit.worst.discrepancy}}}};
    std::cout << j.dump(2) << '\n';
    return audit.violations == 0 ? 0 : 1;
  }

  if (census_cmd->parsed()) {
    const Graph g = load_graph(census_graph);
    const Model model = model_from_string(census_model);
    PercolationSample sample = model == Model::G_m
                                   ? percolate_m(g, static_cast<std::uint64_t>(census_param),
                                                 census_seed)
                                   : percolate_p(g, census_param, census_seed);
    const ComponentCensus c = census(g, sample);
    if (!mask_out.empty()) save_mask(sample, mask_out);
    if (census_json) {
      std::cout << census_to_json(c).dump(2) << '\n';
    } else {
      const GiantRatio ratio = giant_ratio(c);
      const TreeSpectrum trees = isolated_tree_spectrum(c);
      std::cout << "retained " << c.retained << " of " << g.num_edges() << " edges\n"
                << "components " << c.records.size() << ", giant " << c.giant_size << " ("
                << ratio.fraction << " of n, edges/vertices " << ratio.edge_vertex_ratio
                << "), second " << c.second_size << '\n'
                << "largest isolated tree " << trees.largest_tree_size
                << ", tree-vertex fraction " << trees.tree_vertex_fraction << '\n';
    }
    return 0;
  }

  if (theory_cmd->parsed()) {
    const TheoryProfile p = theory_profile(theory_alpha);
    const TheoryResiduals res = theory_residuals(p);
    json j = profile_to_json(p);
    j["f_series"] = f_series(theory_alpha);
    j["residuals"] = {{"dual", res.dual}, {"gamma_equation", res.gamma}};
    if (theory_n >= 16) {
      const double omega = theory_omega >= 0 ? theory_omega : default_omega(theory_n);
      const TreeWindow w = largest_tree_window(theory_n, theory_alpha, omega);
      const SizeInterval iv = forbidden_interval(theory_n, theory_alpha);
      j["largest_tree_window"] = {{"lo", w.lo}, {"hi", w.hi}, {"center", w.center},
                                  {"omega", omega}};
      j["forbidden_interval"] = {{"lo", iv.lo}, {"hi", iv.hi}};
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  auto run_and_write = [&](const ExperimentReport& report, const std::filesystem::path& dir,
                           const std::string& stem) {
    json j = report_to_json(report);
    j["meta"]["generated_at"] = iso_now();
    std::ofstream(dir / (stem + ".json")) << j.dump(2) << '\n';
    std::ofstream rows(dir / (stem + "_rows.csv"));
    write_rows_csv(report, rows);
    std::ofstream verdicts(dir / (stem + "_verdicts.csv"));
    write_verdicts_csv(report, verdicts);
    for (const Verdict& v : report.verdicts)
      std::cout << (v.pass ? "PASS " : "FAIL ") << check_name(v.check)
                << " predicted=" << v.predicted << " observed=" << v.observed
                << " margin=" << v.margin << '\n';
  };

  if (exp_cmd->parsed()) {
    std::ifstream in(exp_config);
    if (!in) fail(ErrorCode::IoError, "cannot open " + exp_config);
    json jc = json::parse(in);
    ExperimentConfig cfg = config_from_json(jc);
    if (exp_workers) cfg.workers = exp_workers;
    const ExperimentReport report = run_experiment(cfg);
    std::filesystem::create_directories(exp_out);
    // report.json / rows.csv / verdicts.csv
    json j = report_to_json(report);
    j["meta"]["generated_at"] = iso_now();
    std::ofstream(std::filesystem::path(exp_out) / "report.json") << j.dump(2) << '\n';
    std::ofstream rows(std::filesystem::path(exp_out) / "rows.csv");
    write_rows_csv(report, rows);
    std::ofstream verdicts(std::filesystem::path(exp_out) / "verdicts.csv");
    write_verdicts_csv(report, verdicts);
    for (const Verdict& v : report.verdicts)
      std::cout << (v.pass ? "PASS " : "FAIL ") << check_name(v.check)
                << " predicted=" << v.predicted << " observed=" << v.observed
                << " margin=" << v.margin << '\n';
    return report.all_pass() ? 0 : 1;
  }

  if (sweep_cmd->parsed()) {
    std::ifstream in(sweep_config);
    if (!in) fail(ErrorCode::IoError, "cannot open " + sweep_config);
    json jc = json::parse(in);
    ExperimentConfig cfg = config_from_json(jc);
    if (sweep_workers) cfg.workers = sweep_workers;
    std::vector<double> alphas;
    std::stringstream ss(sweep_alphas);
    std::string item;
    while (std::getline(ss, item, ',')) alphas.push_back(std::stod(item));
    const std::vector<ExperimentReport> reports = sweep_alpha(cfg, alphas);
    std::filesystem::create_directories(sweep_out);
    std::ofstream csv(std::filesystem::path(sweep_out) / "sweep.csv");
    write_sweep_csv(reports, csv);
    bool all = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      run_and_write(reports[i], sweep_out, "report_alpha_" + std::to_string(i));
      all = all && reports[i].all_pass();
    }
    return all ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const percolab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
