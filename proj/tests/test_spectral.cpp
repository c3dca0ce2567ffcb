#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "percolab/generators.hpp"
#include "percolab/rng.hpp"
#include "percolab/spectral.hpp"

using namespace percolab;

namespace {

// Closed-form lambda of the cycle C_n: max_{j>=1} |2 cos(2 pi j / n)|.
double cycle_lambda(Vertex n) {
  double best = 0.0;
  for (Vertex j = 1; j < n; ++j)
    best = std::max(best, std::abs(2.0 * std::cos(2.0 * std::numbers::pi * j / n)));
  return best;
}

std::vector<Vertex> random_subset(const Graph& g, Rng& rng, double density) {
  std::vector<Vertex> out;
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    if (rng.uniform01() < density) out.push_back(u);
  return out;
}

}  // namespace

TEST_CASE("dense lambda matches closed forms") {
  CHECK(dense_lambda(gen_complete(5)).lambda == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(dense_lambda(gen_complete(50)).lambda == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(dense_lambda(gen_petersen()).lambda == doctest::Approx(2.0).epsilon(1e-10));
  for (Vertex n : {4u, 5u, 6u, 9u, 12u})
    CHECK(dense_lambda(gen_cycle(n)).lambda == doctest::Approx(cycle_lambda(n)).epsilon(1e-9));
  for (std::uint64_t q : {13ull, 29ull, 101ull})
    CHECK(dense_lambda(gen_paley(q)).lambda ==
          doctest::Approx((1.0 + std::sqrt(static_cast<double>(q))) / 2.0).epsilon(1e-9));
}

TEST_CASE("estimate_lambda uses the dense path for small graphs") {
  const SpectralEstimate est = estimate_lambda(gen_paley(13));
  CHECK(est.method == SpectralMethod::dense_exact);
  CHECK(est.lambda == doctest::Approx(2.3027756377319946).epsilon(1e-9));
  CHECK(est.converged);
}

TEST_CASE("power iteration agrees with the dense solver") {
  const double tol = 1e-8;
  for (std::uint64_t seed : {1ull, 2ull}) {
    const Graph g = gen_random_regular(600, 6, seed);
    if (!is_connected(g)) continue;
    const SpectralEstimate power = estimate_lambda(g, tol, 200000);
    const SpectralEstimate dense = dense_lambda(g);
    CHECK(power.method == SpectralMethod::power_deflated);
    CHECK(power.converged);
    CHECK(power.residual <= tol);
    CHECK(std::abs(power.lambda - dense.lambda) <= 10 * tol * std::max(1.0, dense.lambda));
  }
  // Deflated K_n has all eigenvalues equal to -1: converges immediately.
  const SpectralEstimate kn = estimate_lambda(gen_complete(600));
  CHECK(kn.lambda == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(kn.iterations == 1);
}

TEST_CASE("lambda bounded by degree") {
  for (const Graph& g : {gen_petersen(), gen_paley(13), gen_complete(8), gen_cycle(9)}) {
    const double lambda = dense_lambda(g).lambda;
    CHECK(lambda >= 0.0);
    CHECK(lambda <= g.degree() + 1e-9);
  }
}

TEST_CASE("unconverged estimate is flagged, not thrown") {
  // Odd long cycle: the two largest deflated eigenvalues nearly coincide.
  const SpectralEstimate est = estimate_lambda(gen_cycle(601), 1e-12, 5);
  CHECK(!est.converged);
  CHECK(est.iterations == 5);
  CHECK(est.residual > 1e-12);
  CHECK(est.lambda <= 2.0 + 1e-6);
}

TEST_CASE("disconnected graphs are rejected") {
  const std::vector<std::pair<Vertex, Vertex>> two_triangles = {{0, 1}, {0, 2}, {1, 2},
                                                                {3, 4}, {3, 5}, {4, 5}};
  const Graph g = Graph::build(6, two_triangles);
  CHECK_THROWS_AS(estimate_lambda(g), Error);
  try {
    estimate_lambda(g);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Disconnected);
  }
}

TEST_CASE("mixing check on the complete graph, B = C = V") {
  const Graph g = gen_complete(50);
  std::vector<Vertex> all(50);
  for (Vertex u = 0; u < 50; ++u) all[u] = u;
  const MixingReport rep = mixing_check(g, all, all, 1.0);
  CHECK(rep.e_bc == 50 * 49);
  CHECK(rep.expected == doctest::Approx(50.0 * 49.0));
  CHECK(rep.discrepancy == doctest::Approx(0.0));
  CHECK(rep.bound == doctest::Approx(50.0));
  CHECK(rep.satisfied);
}

TEST_CASE("mixing check on the five-cycle singletons") {
  const Graph g = gen_cycle(5);
  const std::vector<Vertex> b{0}, c{2};
  const double lambda = 2.0 * std::cos(std::numbers::pi / 5);  // exact lambda(C_5)
  const MixingReport rep = mixing_check(g, b, c, lambda);
  CHECK(rep.e_bc == 0);
  CHECK(rep.expected == doctest::Approx(0.4));  // (1/5)(1/5)*2*5
  CHECK(rep.discrepancy == doctest::Approx(0.4));
  CHECK(rep.bound == doctest::Approx(lambda * 5.0 * 0.2));
  CHECK(rep.satisfied);
  // Any valid upper bound works too.
  CHECK(mixing_check(g, b, c, 2.0).satisfied);
}

TEST_CASE("ordered-pair symmetry and self-count") {
  const Graph g = gen_paley(13);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = random_subset(g, rng, 0.4);
    const auto c = random_subset(g, rng, 0.6);
    const MixingReport bc = mixing_check(g, b, c, 13.0);
    const MixingReport cb = mixing_check(g, c, b, 13.0);
    CHECK(bc.e_bc == cb.e_bc);

    // e(B,B) is twice the number of edges inside B.
    std::uint64_t inside = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (g.has_edge(b[i], b[j])) ++inside;
    CHECK(mixing_check(g, b, b, 13.0).e_bc == 2 * inside);
  }
}

TEST_CASE("discrepancy bound holds with the exact lambda") {
  // With the true lambda the bound holds for every (B, C) pair; any failure
  // here is an implementation bug.
  for (const Graph& g : {gen_petersen(), gen_paley(13), gen_complete(12), gen_cycle(10)}) {
    const double lambda = dense_lambda(g).lambda;
    const MixingAudit audit = mixing_audit(g, 200, 11, lambda);
    CHECK(audit.violations == 0);
    CHECK(audit.worst_ratio <= 1.0);
  }
}

TEST_CASE("mixing rejects out-of-range vertices") {
  const Graph g = gen_petersen();
  const std::vector<Vertex> bad{10};
  const std::vector<Vertex> ok{0};
  CHECK_THROWS_AS(mixing_check(g, bad, ok, 2.0), Error);
}

TEST_CASE("empty sets are satisfied trivially") {
  const Graph g = gen_petersen();
  const std::vector<Vertex> empty;
  const std::vector<Vertex> some{1, 2};
  const MixingReport rep = mixing_check(g, empty, some, 2.0);
  CHECK(rep.e_bc == 0);
  CHECK(rep.satisfied);
}
