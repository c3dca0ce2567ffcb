#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

// A component of the retained subgraph is a tree (edges = k-1), unicyclic
// (edges = k) or complex (edges >= k+1); the class is determined by (k, edges).
enum class ComponentClass { Tree, Unicyclic, Complex };

ComponentClass classify_component(std::uint64_t size, std::uint64_t edges);

struct ComponentRecord {
  Vertex size = 0;
  std::uint64_t edges = 0;
  ComponentClass cls = ComponentClass::Tree;
  Vertex representative = 0;  // smallest vertex id in the component
};

// Full component decomposition of one percolation sample. The histograms are
// sparse (only occupied sizes): vertices_by_size[k] counts vertices on size-k
// components, tree_vertices_by_size[k] those on size-k isolated trees, and
// trees/unicyclic/complex_by_size count components of each class.
struct ComponentCensus {
  Vertex n = 0;
  std::uint64_t retained = 0;
  std::vector<ComponentRecord> records;  // ordered by representative
  std::map<Vertex, std::uint64_t> vertices_by_size;       // C_k
  std::map<Vertex, std::uint64_t> tree_vertices_by_size;  // T_k
  std::map<Vertex, std::uint64_t> trees_by_size;          // N_k
  std::map<Vertex, std::uint64_t> unicyclic_by_size;      // U_k
  std::map<Vertex, std::uint64_t> complex_by_size;        // COMP_k
  Vertex giant_size = 0;
  Vertex second_size = 0;  // 0 when there is a single component
  std::uint64_t giant_edges = 0;
};

// Union-find pass over the retained edges; per-component edge counts are
// accumulated in the same pass. Errors: SampleGraphMismatch.
ComponentCensus census(const Graph& g, const PercolationSample& sample);

struct GiantRatio {
  double fraction = 0.0;           // giant_size / n
  double edge_vertex_ratio = 0.0;  // giant_edges / giant_size
};

GiantRatio giant_ratio(const ComponentCensus& c);

struct TreeSpectrum {
  Vertex largest_tree_size = 0;      // largest k with a size-k tree component
  double tree_vertex_fraction = 0.0; // (sum of T_k) / n
};

TreeSpectrum isolated_tree_spectrum(const ComponentCensus& c);

// Exact number of k-vertex tree subgraphs of g, counted once per
// (vertex set, edge set) pair: a vertex set contributes one tree per spanning
// tree of its induced subgraph. Connected k-sets are enumerated exactly once
// (exclusive-neighborhood extension); spanning trees are counted by an
// integer matrix-tree determinant. Guard: k <= 7 (KTooLarge).
std::uint64_t count_trees_tk(const Graph& g, unsigned k);

// Sum over components of k * U_k (vertices on unicyclic components).
std::uint64_t unicyclic_vertices(const ComponentCensus& c);

}  // namespace percolab
