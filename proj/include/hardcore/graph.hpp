#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hardcore {

using Edge = std::pair<int, int>;

/// Immutable undirected simple graph on vertices 0..n-1.
///
/// Adjacency is stored as sorted neighbour lists. All operations that
/// "modify" a graph return a new one; the exact-counting layer compacts
/// components to 64-bit adjacency rows internally.
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph on n vertices.
  explicit Graph(int n);

  int n() const { return static_cast<int>(adj_.size()); }
  std::int64_t m() const { return m_; }
  /// 2m/n, and 0 for the empty graph.
  double average_degree() const;

  int degree(int v) const;
  std::span<const int> neighbors(int v) const;
  bool has_edge(int u, int v) const;

  /// Edge list with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Sum over vertices of deg(v)^2 (exact).
  std::int64_t degree_square_sum() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::vector<int>> adj_;
  std::int64_t m_ = 0;

  friend Graph from_edge_list(int n, std::span<const Edge> edges);
  friend Graph induced_subgraph(const Graph& g, std::span<const int> keep);
};

/// Builds a graph from an edge list; edges are deduplicated and symmetrized.
/// Throws std::invalid_argument on out-of-range endpoints or self-loops.
Graph from_edge_list(int n, std::span<const Edge> edges);
Graph from_edge_list(int n, std::initializer_list<Edge> edges);

/// Number of 3-vertex subsets spanning 3 edges.
std::int64_t count_triangles(const Graph& g);
bool is_triangle_free(const Graph& g);

/// G - v. The remaining vertices are relabeled 0..n-2 preserving order.
Graph delete_vertex(const Graph& g, int v);
/// G - N[v] (v together with its neighbourhood), relabeled preserving order.
Graph delete_closed_neighborhood(const Graph& g, int v);

/// Induced subgraph on the given vertices (must be strictly increasing),
/// relabeled 0..k-1 preserving order.
Graph induced_subgraph(const Graph& g, std::span<const int> keep);

/// Maximal connected induced subgraphs, ordered by smallest contained vertex.
std::vector<Graph> connected_components(const Graph& g);

// ---------------------------------------------------------------------------
// Text format: first line "n m", then m lines "u v" (0-based). The writer
// emits edges with u < v in lexicographic order. An empty stream parses as
// the empty graph.

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);
Graph read_graph_file(const std::string& path);

// ---------------------------------------------------------------------------
// Exhaustive labeled enumeration (n <= 7).

/// 2^(n choose 2), the number of labeled simple graphs on n vertices.
std::uint64_t labeled_graph_count(int n);

/// Streams every labeled simple graph on n vertices exactly once, in
/// edge-mask order; optionally only the triangle-free ones. Enforces n <= 7.
/// A mask range [mask_begin, mask_end) can be given to shard the stream.
class LabeledGraphEnumerator {
 public:
  LabeledGraphEnumerator(int n, bool triangle_free_only);
  LabeledGraphEnumerator(int n, bool triangle_free_only, std::uint64_t mask_begin,
                         std::uint64_t mask_end);

  /// Next graph, or nullopt when the stream is exhausted.
  std::optional<Graph> next();

 private:
  int n_;
  bool tf_only_;
  std::uint64_t mask_, end_;
  std::vector<Edge> pairs_;
};

/// Stream over all labeled graphs on n vertices (n <= 7), optionally
/// restricted to triangle-free ones.
LabeledGraphEnumerator enumerate_labeled_graphs(int n, bool triangle_free_only);

}  // namespace hardcore
