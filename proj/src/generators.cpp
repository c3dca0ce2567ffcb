#include "percolab/generators.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "percolab/rng.hpp"

namespace percolab {

Family family_from_string(std::string_view s) {
  if (s == "random_regular") return Family::random_regular;
  if (s == "paley") return Family::paley;
  if (s == "complete") return Family::complete;
  if (s == "cycle") return Family::cycle;
  if (s == "petersen") return Family::petersen;
  fail(ErrorCode::UnknownFamily, std::string(s));
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::random_regular: return "random_regular";
    case Family::paley: return "paley";
    case Family::complete: return "complete";
    case Family::cycle: return "cycle";
    case Family::petersen: return "petersen";
  }
  return "?";
}

namespace {

// One stub-matching attempt. Returns false when a round pairs nothing off
// (stuck on an unmatchable remainder).
bool try_match_stubs(Vertex n, std::uint32_t d, Rng& rng,
                     std::vector<std::vector<Vertex>>& adj,
                     std::vector<std::pair<Vertex, Vertex>>& edges) {
  const std::uint64_t total = static_cast<std::uint64_t>(n) * d;
  std::vector<Vertex> stubs;
  stubs.reserve(total);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);

  auto already_joined = [&](Vertex u, Vertex v) {
    const auto& list = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const Vertex other = adj[u].size() <= adj[v].size() ? v : u;
    return std::find(list.begin(), list.end(), other) != list.end();
  };

  std::vector<Vertex> leftover;
  while (!stubs.empty()) {
    for (std::uint64_t i = stubs.size() - 1; i > 0; --i)
      std::swap(stubs[i], stubs[rng.below(i + 1)]);

    leftover.clear();
    for (std::uint64_t i = 0; i + 1 < stubs.size(); i += 2) {
      const Vertex u = stubs[i], v = stubs[i + 1];
      if (u == v || already_joined(u, v)) {
        leftover.push_back(u);
        leftover.push_back(v);
        continue;
      }
      adj[u].push_back(v);
      adj[v].push_back(u);
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (leftover.size() == stubs.size()) return false;
    stubs.swap(leftover);
  }
  return true;
}

}  // namespace

Graph gen_random_regular(Vertex n, std::uint32_t d, std::uint64_t seed) {
  if (n == 0 || d == 0) fail(ErrorCode::InvalidArgument, "need n > 0 and d > 0");
  if (d >= n) fail(ErrorCode::DegreeTooLarge, "d=" + std::to_string(d) + " >= n=" + std::to_string(n));
  if (static_cast<std::uint64_t>(n) * d % 2 != 0)
    fail(ErrorCode::OddDegreeSum, "n*d = " + std::to_string(static_cast<std::uint64_t>(n) * d));

  constexpr int kRestartBudget = 1000;
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int attempt = 0; attempt < kRestartBudget; ++attempt) {
    for (auto& a : adj) {
      a.clear();
      a.reserve(d);
    }
    edges.clear();
    edges.reserve(static_cast<std::uint64_t>(n) * d / 2);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (try_match_stubs(n, d, rng, adj, edges)) return Graph::build(n, edges);
  }
  fail(ErrorCode::RetryLimitExceeded,
       "no simple matching after 1000 attempts (n=" + std::to_string(n) +
           ", d=" + std::to_string(d) + ")");
}

namespace {

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t i = 3; i * i <= q; i += 2)
    if (q % i == 0) return false;
  return true;
}

}  // namespace

Graph gen_paley(std::uint64_t q) {
  if (!is_prime(q)) fail(ErrorCode::NotPrime, std::to_string(q));
  if (q % 4 != 1) fail(ErrorCode::WrongResidueClass, std::to_string(q) + " != 1 (mod 4)");

  std::vector<bool> residue(q, false);
  for (std::uint64_t i = 1; i <= (q - 1) / 2; ++i) residue[i * i % q] = true;

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(q * (q - 1) / 4);
  for (std::uint64_t u = 0; u < q; ++u)
    for (std::uint64_t v = u + 1; v < q; ++v)
      if (residue[v - u]) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  return Graph::build(static_cast<Vertex>(q), edges);
}

Graph gen_complete(Vertex n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "K_n needs n >= 2");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::uint64_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::build(n, edges);
}

Graph gen_cycle(Vertex n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "C_n needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(n);
  for (Vertex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  edges.emplace_back(0, n - 1);
  return Graph::build(n, edges);
}

Graph gen_petersen() {
  // Outer 5-cycle, spokes, inner pentagram.
  static const std::pair<Vertex, Vertex> kEdges[] = {
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
      {5, 7}, {6, 8}, {7, 9}, {5, 8}, {6, 9},
  };
  return Graph::build(10, kEdges);
}

Graph gen_fixture(Family family, Vertex n) {
  switch (family) {
    case Family::cycle: return gen_cycle(n);
    case Family::petersen: return gen_petersen();
    default:
      fail(ErrorCode::UnknownFamily,
           std::string(family_name(family)) + " is not a fixture family");
  }
}

Graph generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::random_regular: return gen_random_regular(spec.n, spec.d, spec.seed);
    case Family::paley: return gen_paley(spec.q);
    case Family::complete: return gen_complete(spec.n);
    case Family::cycle: return gen_cycle(spec.n);
    case Family::petersen: return gen_petersen();
  }
  fail(ErrorCode::UnknownFamily, "unhandled family");
}

Vertex spec_vertex_count(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::paley: return static_cast<Vertex>(spec.q);
    case Family::petersen: return 10;
    default: return spec.n;
  }
}

}  // namespace percolab
