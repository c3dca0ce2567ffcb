#pragma once

#include <cstdint>
#include <span>

#include "percolab/graph.hpp"

namespace percolab {

enum class SpectralMethod { power_deflated, dense_exact };

// Estimate of lambda = max_{i>=2} |lambda_i| of the adjacency matrix.
struct SpectralEstimate {
  double lambda = 0.0;
  std::uint64_t iterations = 0;
  double residual = 0.0;  // normalized eigen-residual at the returned estimate
  SpectralMethod method = SpectralMethod::power_deflated;
  bool converged = true;
};

// For a connected d-regular graph, the top eigenpair is (d, all-ones), so the
// operator x -> Ax - (d/n)(sum x) 1 has the remaining spectrum. Power
// iteration runs on the square of that operator (handles a dominant negative
// eigenvalue, e.g. bipartite graphs where lambda = d). Falls back to a dense
// full eigendecomposition when n <= 512.
//
// Errors: Disconnected. When max_iter is exhausted the best estimate is
// returned with converged = false.
SpectralEstimate estimate_lambda(const Graph& g, double tol = 1e-8,
                                 std::uint64_t max_iter = 10000);

// Dense full eigendecomposition (exact up to LAPACK-style accuracy); n <= 4096.
SpectralEstimate dense_lambda(const Graph& g);

// Edge-discrepancy audit between vertex sets B and C: compares the ordered
// pair count e(B,C) against b*c*d*n with tolerance lambda*n*sqrt(b*c), where
// b = |B|/n and c = |C|/n. B = C is allowed; e(B,B) is twice the number of
// edges inside B.
struct MixingReport {
  std::uint64_t b_size = 0;
  std::uint64_t c_size = 0;
  std::uint64_t e_bc = 0;
  double expected = 0.0;     // b*c*d*n
  double bound = 0.0;        // lambda*n*sqrt(b*c)
  double discrepancy = 0.0;  // |e_bc - expected|
  bool satisfied = false;
};

// `lambda` must be a valid upper bound on lambda(g). Duplicate vertices in B
// or C are ignored. Errors: VertexOutOfRange.
MixingReport mixing_check(const Graph& g, std::span<const Vertex> b_set,
                          std::span<const Vertex> c_set, double lambda);

struct MixingAudit {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double worst_ratio = 0.0;  // max discrepancy/bound over samples with bound > 0
  MixingReport worst;
};

// Checks `samples` random (B,C) pairs (each vertex kept with a per-sample
// random density). All reports must be satisfied when lambda is valid.
MixingAudit mixing_audit(const Graph& g, std::uint64_t samples, std::uint64_t seed,
                         double lambda);

}  // namespace percolab
