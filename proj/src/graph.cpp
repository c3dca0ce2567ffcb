#include "percolab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "percolab/rng.hpp"

namespace percolab {

namespace {

std::string edge_str(Vertex u, Vertex v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

}  // namespace

Graph Graph::build(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "graph needs at least one vertex");
  if (edges.empty()) fail(ErrorCode::InvalidArgument, "graph needs a positive degree");

  std::vector<std::uint32_t> deg(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      fail(ErrorCode::VertexOutOfRange, "edge " + edge_str(u, v) + " with n=" + std::to_string(n));
    if (u == v) fail(ErrorCode::SelfLoop, "vertex " + std::to_string(u));
    ++deg[u];
    ++deg[v];
  }

  Graph g;
  g.n_ = n;
  g.m_ = edges.size();
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + deg[u];
  g.neighbors_.resize(g.offsets_[n]);

  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }

  for (Vertex u = 0; u < n; ++u) {
    auto begin = g.neighbors_.begin() + g.offsets_[u];
    auto end = g.neighbors_.begin() + g.offsets_[u + 1];
    std::sort(begin, end);
    auto dup = std::adjacent_find(begin, end);
    if (dup != end) fail(ErrorCode::DuplicateEdge, "edge " + edge_str(u, *dup) + " repeated");
  }

  g.d_ = deg[0];
  for (Vertex u = 1; u < n; ++u)
    if (deg[u] != g.d_)
      fail(ErrorCode::NotRegular, "deg(" + std::to_string(u) + ")=" + std::to_string(deg[u]) +
                                      " but deg(0)=" + std::to_string(g.d_));
  if (static_cast<std::uint64_t>(n) * g.d_ % 2 != 0)
    fail(ErrorCode::OddDegreeSum, "n*d is odd");
  if (static_cast<std::uint64_t>(n) * g.d_ != 2 * g.m_)
    fail(ErrorCode::NotRegular, "edge count does not match n*d/2");

  g.upper_begin_.resize(n);
  g.edge_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex u = 0; u < n; ++u) {
    auto begin = g.neighbors_.begin() + g.offsets_[u];
    auto end = g.neighbors_.begin() + g.offsets_[u + 1];
    g.upper_begin_[u] = std::upper_bound(begin, end, u) - g.neighbors_.begin();
    g.edge_offsets_[u + 1] =
        g.edge_offsets_[u] + (g.offsets_[u + 1] - g.upper_begin_[u]);
  }

  std::uint64_t h = splitmix64(0x70657263ULL ^ n);
  h = splitmix64(h ^ g.d_);
  for (Vertex v : g.neighbors_) h = splitmix64(h ^ v) + 0x9e3779b97f4a7c15ULL;
  g.fingerprint_ = h;
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_)
    fail(ErrorCode::VertexOutOfRange,
         edge_str(u, v) + " with n=" + std::to_string(n_));
  if (u == v) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

EdgeId Graph::edge_id(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  if (!has_edge(u, v)) fail(ErrorCode::InvalidArgument, "no edge " + edge_str(u, v));
  auto begin = neighbors_.begin() + upper_begin_[u];
  auto end = neighbors_.begin() + offsets_[u + 1];
  return edge_offsets_[u] + (std::lower_bound(begin, end, v) - begin);
}

std::pair<Vertex, Vertex> Graph::edge_endpoints(EdgeId e) const {
  if (e >= m_) fail(ErrorCode::InvalidArgument, "edge id " + std::to_string(e) + " out of range");
  const Vertex u = static_cast<Vertex>(
      std::upper_bound(edge_offsets_.begin(), edge_offsets_.end(), e) - edge_offsets_.begin() - 1);
  return {u, neighbors_[upper_begin_[u] + (e - edge_offsets_[u])]};
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(m_);
  for_each_edge([&](EdgeId, Vertex u, Vertex v) { out.emplace_back(u, v); });
  return out;
}

bool is_connected(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  Vertex visited = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n;
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << g.num_vertices() << ' ' << g.degree() << ' ' << g.num_edges() << '\n';
  g.for_each_edge([&](EdgeId, Vertex u, Vertex v) { out << u << ' ' << v << '\n'; });
  if (!out) fail(ErrorCode::IoError, "short write to " + path.string());
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());

  std::uint64_t n = 0, d = 0, m = 0;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "missing header");
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> d >> m) || (hs >> extra))
      fail(ErrorCode::ParseError, "header must be \"n d m\"");
  }
  if (n == 0 || n > 0xffffffffULL) fail(ErrorCode::ParseError, "vertex count out of range");

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(m);
  std::pair<std::uint64_t, std::uint64_t> prev{0, 0};
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u = 0, v = 0;
    if (!(in >> u >> v))
      fail(ErrorCode::ParseError, "expected " + std::to_string(m) + " edges, got " +
                                      std::to_string(i));
    if (u >= n || v >= n)
      fail(ErrorCode::VertexOutOfRange, "edge line " + std::to_string(i + 1));
    if (u == v) fail(ErrorCode::SelfLoop, "edge line " + std::to_string(i + 1));
    if (u > v) fail(ErrorCode::ParseError, "edge line " + std::to_string(i + 1) + ": u > v");
    const std::pair<std::uint64_t, std::uint64_t> cur{u, v};
    if (i > 0) {
      if (cur == prev) fail(ErrorCode::DuplicateEdge, "edge line " + std::to_string(i + 1));
      if (cur < prev)
        fail(ErrorCode::ParseError, "edge line " + std::to_string(i + 1) + ": not sorted");
    }
    prev = cur;
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::uint64_t trail_u = 0;
  if (in >> trail_u) fail(ErrorCode::ParseError, "trailing data after " + std::to_string(m) + " edges");

  Graph g = Graph::build(static_cast<Vertex>(n), edges);
  if (g.degree() != d)
    fail(ErrorCode::ParseError, "header degree " + std::to_string(d) + " but graph has " +
                                    std::to_string(g.degree()));
  return g;
}

}  // namespace percolab
