#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "percolab/bitset.hpp"
#include "percolab/error.hpp"

namespace percolab {

using Vertex = std::uint32_t;
using EdgeId = std::uint64_t;

// Immutable simple d-regular graph in compressed adjacency form.
//
// Vertices are 0-indexed. The canonical edge enumeration orders the m = nd/2
// undirected edges lexicographically on (min endpoint, max endpoint); edge ids
// are the positions in that order and are stable across runs, which makes
// percolation masks byte-for-byte reproducible.
//
// A Graph is immutable after construction and safe to share read-only across
// concurrent workers.
class Graph {
 public:
  // Validates and builds. Errors: VertexOutOfRange, SelfLoop, DuplicateEdge,
  // NotRegular, OddDegreeSum.
  static Graph build(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);

  Vertex num_vertices() const { return n_; }
  std::uint32_t degree() const { return d_; }
  EdgeId num_edges() const { return m_; }

  // Sorted neighbor list of u. No bounds check (hot path).
  std::span<const Vertex> neighbors(Vertex u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }

  // True iff {u,v} is an edge; symmetric; O(log d). Errors: VertexOutOfRange.
  bool has_edge(Vertex u, Vertex v) const;

  // Canonical id of edge {u,v}; the edge must exist.
  EdgeId edge_id(Vertex u, Vertex v) const;

  // Endpoints (u, v) with u < v of canonical edge e.
  std::pair<Vertex, Vertex> edge_endpoints(EdgeId e) const;

  // Edges in canonical order.
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

  // Visits all edges in canonical order: f(edge_id, u, v) with u < v.
  template <class F>
  void for_each_edge(F&& f) const {
    EdgeId e = 0;
    for (Vertex u = 0; u < n_; ++u)
      for (std::uint64_t i = upper_begin_[u]; i < offsets_[u + 1]; ++i) f(e++, u, neighbors_[i]);
  }

  // Visits edges whose bit is set in `mask` (a bitset of length num_edges()),
  // in canonical order. Single pass, no per-edge endpoint search.
  template <class F>
  void for_each_masked_edge(const DynamicBitset& mask, F&& f) const {
    Vertex u = 0;
    mask.for_each_set([&](EdgeId e) {
      while (edge_offsets_[u + 1] <= e) ++u;
      f(e, u, neighbors_[upper_begin_[u] + (e - edge_offsets_[u])]);
    });
  }

  // Hash of (n, d, adjacency); identifies the graph a percolation sample
  // belongs to.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  Graph() = default;

  Vertex n_ = 0;
  std::uint32_t d_ = 0;
  EdgeId m_ = 0;
  std::vector<std::uint64_t> offsets_;     // n+1, into neighbors_
  std::vector<Vertex> neighbors_;          // nd entries, sorted per vertex
  std::vector<std::uint64_t> upper_begin_; // n, first neighbor of u that is > u
  std::vector<EdgeId> edge_offsets_;       // n+1, canonical id of first edge at u
  std::uint64_t fingerprint_ = 0;
};

// True iff the graph has a single connected component.
bool is_connected(const Graph& g);

// Text format: header "n d m", then m lines "u v" with u < v in lexicographic
// order. The reader rejects violations with the same errors as Graph::build;
// format violations are ParseError.
void save_graph(const Graph& g, const std::filesystem::path& path);
Graph load_graph(const std::filesystem::path& path);

}  // namespace percolab
