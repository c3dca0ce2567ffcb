#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>

#include "percolab/bitset.hpp"
#include "percolab/graph.hpp"

namespace percolab {

// Edge-retention models: keep each edge independently with probability p, or
// keep a uniformly random m-subset of the edge set.
enum class Model { G_p, G_m };

std::string_view model_name(Model m);
Model model_from_string(std::string_view s);

struct PercolationSample {
  Model model = Model::G_p;
  double p = 0.0;                   // G_p
  std::uint64_t m = 0;              // G_m
  std::optional<double> alpha;      // set when the parameter came from alpha
  std::uint64_t seed = 0;
  std::uint64_t graph_fingerprint = 0;
  DynamicBitset mask;               // indexed by canonical edge id
  std::uint64_t retained = 0;       // popcount of mask
};

// Each edge retained independently with probability p, one uniform draw per
// edge in canonical order. Sharing a seed across two probabilities p1 < p2
// yields nested masks (monotone coupling). Errors: ProbabilityOutOfRange.
PercolationSample percolate_p(const Graph& g, double p, std::uint64_t seed);

// Uniformly random m-subset of edges via partial Fisher-Yates shuffle of the
// edge ids. For a fixed seed the retained set grows monotonically in m.
// Errors: TooManyEdges.
PercolationSample percolate_m(const Graph& g, std::uint64_t m, std::uint64_t seed);

// Two-round exposure: nested samples with m1 <= m2 edges from one shuffle.
std::pair<PercolationSample, PercolationSample> percolate_m_prefix(const Graph& g,
                                                                   std::uint64_t m1,
                                                                   std::uint64_t m2,
                                                                   std::uint64_t seed);

// p = alpha/d. Errors: AlphaTooLarge (alpha > d), InvalidArgument (alpha <= 0).
double alpha_to_p(double alpha, std::uint32_t d);

// m = round(alpha*n/2), nearest integer.
std::uint64_t alpha_to_m(double alpha, Vertex n);

// Samples with the parameter derived from alpha; records alpha in the sample.
PercolationSample percolate_alpha(const Graph& g, Model model, double alpha,
                                  std::uint64_t seed);

// Mask dump: text header (model, parameter, seed, retained, bit count, RNG
// name and stream-split rule) followed by the hex-encoded mask.
void save_mask(const PercolationSample& sample, const std::filesystem::path& path);
PercolationSample load_mask(const std::filesystem::path& path);

}  // namespace percolab
