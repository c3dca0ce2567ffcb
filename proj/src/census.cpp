#include "percolab/census.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace percolab {

ComponentClass classify_component(std::uint64_t size, std::uint64_t edges) {
  if (edges == size - 1) return ComponentClass::Tree;
  if (edges == size) return ComponentClass::Unicyclic;
  return ComponentClass::Complex;
}

namespace {

struct UnionFind {
  std::vector<Vertex> parent;
  std::vector<Vertex> size;
  std::vector<std::uint64_t> edges;

  explicit UnionFind(Vertex n) : parent(n), size(n, 1), edges(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  Vertex find(Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];  // path halving
      x = parent[x];
    }
    return x;
  }

  void add_edge(Vertex u, Vertex v) {
    Vertex ru = find(u), rv = find(v);
    if (ru == rv) {
      ++edges[ru];
      return;
    }
    if (size[ru] < size[rv]) std::swap(ru, rv);
    parent[rv] = ru;
    size[ru] += size[rv];
    edges[ru] += edges[rv] + 1;
  }
};

}  // namespace

ComponentCensus census(const Graph& g, const PercolationSample& sample) {
  if (sample.graph_fingerprint != g.fingerprint() || sample.mask.size() != g.num_edges())
    fail(ErrorCode::SampleGraphMismatch, "sample does not belong to this graph");

  const Vertex n = g.num_vertices();
  UnionFind uf(n);
  g.for_each_masked_edge(sample.mask, [&](EdgeId, Vertex u, Vertex v) { uf.add_edge(u, v); });

  ComponentCensus out;
  out.n = n;
  out.retained = sample.retained;

  std::vector<std::uint8_t> seen(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = uf.find(v);
    if (seen[r]) continue;
    seen[r] = 1;
    ComponentRecord rec;
    rec.size = uf.size[r];
    rec.edges = uf.edges[r];
    rec.cls = classify_component(rec.size, rec.edges);
    rec.representative = v;  // ascending scan: first hit is the smallest id
    out.records.push_back(rec);
  }

  for (const ComponentRecord& rec : out.records) {
    out.vertices_by_size[rec.size] += rec.size;
    switch (rec.cls) {
      case ComponentClass::Tree:
        out.trees_by_size[rec.size] += 1;
        out.tree_vertices_by_size[rec.size] += rec.size;
        break;
      case ComponentClass::Unicyclic:
        out.unicyclic_by_size[rec.size] += 1;
        break;
      case ComponentClass::Complex:
        out.complex_by_size[rec.size] += 1;
        break;
    }
    if (rec.size > out.giant_size) {
      out.second_size = out.giant_size;
      out.giant_size = rec.size;
      out.giant_edges = rec.edges;
    } else if (rec.size > out.second_size) {
      out.second_size = rec.size;
    }
  }
  return out;
}

GiantRatio giant_ratio(const ComponentCensus& c) {
  GiantRatio r;
  if (c.n == 0) return r;
  r.fraction = static_cast<double>(c.giant_size) / c.n;
  r.edge_vertex_ratio =
      c.giant_size > 0 ? static_cast<double>(c.giant_edges) / c.giant_size : 0.0;
  return r;
}

TreeSpectrum isolated_tree_spectrum(const ComponentCensus& c) {
  TreeSpectrum s;
  std::uint64_t tree_vertices = 0;
  for (const auto& [k, count] : c.trees_by_size) {
    if (count > 0) s.largest_tree_size = std::max(s.largest_tree_size, k);
  }
  for (const auto& [k, verts] : c.tree_vertices_by_size) tree_vertices += verts;
  s.tree_vertex_fraction = c.n > 0 ? static_cast<double>(tree_vertices) / c.n : 0.0;
  return s;
}

std::uint64_t unicyclic_vertices(const ComponentCensus& c) {
  std::uint64_t total = 0;
  for (const auto& [k, count] : c.unicyclic_by_size) total += k * count;
  return total;
}

namespace {

// Number of spanning trees of the subgraph induced by `verts` (matrix-tree
// theorem; Bareiss fraction-free elimination keeps everything in integers).
std::uint64_t spanning_tree_count(const Graph& g, const std::vector<Vertex>& verts) {
  const int k = static_cast<int>(verts.size());
  if (k == 1) return 1;
  const int m = k - 1;
  std::array<std::array<long long, 6>, 6> a{};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (!g.has_edge(verts[i], verts[j])) continue;
      if (i < m) a[i][i] += 1;
      if (j < m) a[j][j] += 1;
      if (i < m && j < m) {
        a[i][j] -= 1;
        a[j][i] -= 1;
      }
    }
  }
  long long sign = 1, prev = 1;
  for (int col = 0; col < m - 1; ++col) {
    if (a[col][col] == 0) {
      int pivot = -1;
      for (int r = col + 1; r < m; ++r)
        if (a[r][col] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(a[col], a[pivot]);
      sign = -sign;
    }
    for (int r = col + 1; r < m; ++r)
      for (int c = col + 1; c < m; ++c)
        a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
    prev = a[col][col];
  }
  const long long det = sign * a[m - 1][m - 1];
  return det > 0 ? static_cast<std::uint64_t>(det) : 0;
}

// Enumerates every connected k-vertex subset exactly once: grow from each
// root using only vertices with larger ids that are not yet adjacent to the
// current subset (exclusive neighborhood).
class ConnectedSubsetScan {
 public:
  ConnectedSubsetScan(const Graph& g, unsigned k)
      : g_(g), k_(k), covered_(g.num_vertices(), 0) {}

  std::uint64_t total_spanning_trees() {
    std::uint64_t total = 0;
    const Vertex n = g_.num_vertices();
    std::vector<Vertex> ext;
    for (Vertex root = 0; root < n; ++root) {
      sub_.assign(1, root);
      marked_.clear();
      mark(root);
      for (Vertex u : g_.neighbors(root)) mark(u);
      ext.clear();
      for (Vertex u : g_.neighbors(root))
        if (u > root) ext.push_back(u);
      extend(root, ext, total);
      for (Vertex u : marked_) covered_[u] = 0;
    }
    return total;
  }

 private:
  void mark(Vertex u) {
    if (!covered_[u]) {
      covered_[u] = 1;
      marked_.push_back(u);
    }
  }

  void extend(Vertex root, std::vector<Vertex>& ext, std::uint64_t& total) {
    if (sub_.size() == k_) {
      total += spanning_tree_count(g_, sub_);
      return;
    }
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      // exclusive neighbors of w, relative to the subset before adding w
      std::vector<Vertex> grown = ext;
      for (Vertex u : g_.neighbors(w))
        if (u > root && !covered_[u]) grown.push_back(u);
      const std::size_t marked_before = marked_.size();
      for (Vertex u : g_.neighbors(w)) mark(u);
      sub_.push_back(w);
      extend(root, grown, total);
      sub_.pop_back();
      while (marked_.size() > marked_before) {
        covered_[marked_.back()] = 0;
        marked_.pop_back();
      }
    }
  }

  const Graph& g_;
  const unsigned k_;
  std::vector<std::uint8_t> covered_;  // in subset or adjacent to it
  std::vector<Vertex> marked_;
  std::vector<Vertex> sub_;
};

}  // namespace

std::uint64_t count_trees_tk(const Graph& g, unsigned k) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  if (k > 7) fail(ErrorCode::KTooLarge, "tree enumeration guarded at k <= 7");
  if (k == 1) return g.num_vertices();
  if (k > g.num_vertices()) return 0;
  ConnectedSubsetScan scan(g, k);
  return scan.total_spanning_trees();
}

}  // namespace percolab
