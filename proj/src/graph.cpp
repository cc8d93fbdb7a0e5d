#include "hardcore/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hardcore {

Graph::Graph(int n) {
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
  adj_.resize(n);
}

double Graph::average_degree() const {
  if (n() == 0) return 0.0;
  return 2.0 * static_cast<double>(m_) / n();
}

int Graph::degree(int v) const {
  return static_cast<int>(adj_.at(v).size());
}

std::span<const int> Graph::neighbors(int v) const {
  const auto& a = adj_.at(v);
  return {a.data(), a.size()};
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj_.at(u);
  if (v < 0 || v >= n()) throw std::out_of_range("vertex out of range");
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n(); ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::int64_t Graph::degree_square_sum() const {
  std::int64_t s = 0;
  for (const auto& a : adj_) {
    auto d = static_cast<std::int64_t>(a.size());
    s += d * d;
  }
  return s;
}

Graph from_edge_list(int n, std::span<const Edge> edges) {
  Graph g(n);
  std::vector<Edge> norm;
  norm.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    norm.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
  for (auto [u, v] : norm) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& a : g.adj_) std::sort(a.begin(), a.end());
  g.m_ = static_cast<std::int64_t>(norm.size());
  return g;
}

Graph from_edge_list(int n, std::initializer_list<Edge> edges) {
  return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
}

std::int64_t count_triangles(const Graph& g) {
  std::int64_t t = 0;
  for (int u = 0; u < g.n(); ++u) {
    auto nu = g.neighbors(u);
    for (int v : nu) {
      if (v <= u) continue;
      // common neighbours w with u < v < w; each triangle counted once
      auto nv = g.neighbors(v);
      auto iu = std::upper_bound(nu.begin(), nu.end(), v);
      auto iv = std::upper_bound(nv.begin(), nv.end(), v);
      while (iu != nu.end() && iv != nv.end()) {
        if (*iu < *iv) {
          ++iu;
        } else if (*iv < *iu) {
          ++iv;
        } else {
          ++t;
          ++iu;
          ++iv;
        }
      }
    }
  }
  return t;
}

bool is_triangle_free(const Graph& g) { return count_triangles(g) == 0; }

Graph induced_subgraph(const Graph& g, std::span<const int> keep) {
  std::vector<int> index(g.n(), -1);
  int prev = -1;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    int v = keep[i];
    if (v <= prev || v >= g.n())
      throw std::invalid_argument("keep list must be strictly increasing and in range");
    index[v] = static_cast<int>(i);
    prev = v;
  }
  Graph h(static_cast<int>(keep.size()));
  std::int64_t m = 0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (int w : g.neighbors(keep[i])) {
      if (index[w] >= 0) {
        h.adj_[i].push_back(index[w]);
        ++m;
      }
    }
  }
  h.m_ = m / 2;
  return h;
}

Graph delete_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.n()) throw std::out_of_range("vertex out of range");
  std::vector<int> keep;
  keep.reserve(g.n() - 1);
  for (int u = 0; u < g.n(); ++u)
    if (u != v) keep.push_back(u);
  return induced_subgraph(g, keep);
}

Graph delete_closed_neighborhood(const Graph& g, int v) {
  if (v < 0 || v >= g.n()) throw std::out_of_range("vertex out of range");
  std::vector<char> drop(g.n(), 0);
  drop[v] = 1;
  for (int u : g.neighbors(v)) drop[u] = 1;
  std::vector<int> keep;
  for (int u = 0; u < g.n(); ++u)
    if (!drop[u]) keep.push_back(u);
  return induced_subgraph(g, keep);
}

std::vector<Graph> connected_components(const Graph& g) {
  std::vector<Graph> out;
  std::vector<char> seen(g.n(), 0);
  std::vector<int> stack, comp;
  for (int s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    comp.clear();
    stack.assign(1, s);
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(induced_subgraph(g, comp));
  }
  return out;
}

Graph read_graph(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n)) {
    if (in.eof()) return Graph(0);  // empty stream: the empty graph
    throw std::invalid_argument("graph header needs \"n m\"");
  }
  if (!(in >> m)) throw std::invalid_argument("graph header needs \"n m\"");
  if (n < 0 || m < 0) throw std::invalid_argument("negative counts in graph header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v))
      throw std::invalid_argument("truncated edge list: expected " + std::to_string(m) +
                                  " edges");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  Graph g = from_edge_list(static_cast<int>(n), edges);
  if (g.m() != m)
    throw std::invalid_argument("duplicate edges in input");
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  Graph g = read_graph(in);
  std::string tail;
  if (in >> tail) throw std::invalid_argument("trailing tokens after edge list");
  return g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

std::uint64_t labeled_graph_count(int n) {
  if (n < 0 || n > 11) throw std::invalid_argument("labeled_graph_count supports n <= 11");
  int pairs = n * (n - 1) / 2;
  return std::uint64_t{1} << pairs;
}

LabeledGraphEnumerator::LabeledGraphEnumerator(int n, bool triangle_free_only)
    : LabeledGraphEnumerator(n, triangle_free_only, 0,
                             (n < 0 || n > 7) ? 1 : labeled_graph_count(n)) {}

LabeledGraphEnumerator::LabeledGraphEnumerator(int n, bool triangle_free_only,
                                               std::uint64_t mask_begin,
                                               std::uint64_t mask_end)
    : n_(n), tf_only_(triangle_free_only), mask_(mask_begin), end_(mask_end) {
  if (n < 0 || n > 7)
    throw std::invalid_argument("labeled enumeration supports n <= 7");
  std::uint64_t total = labeled_graph_count(n);
  if (mask_begin > mask_end || mask_end > total)
    throw std::invalid_argument("mask range out of bounds");
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs_.emplace_back(u, v);
}

std::optional<Graph> LabeledGraphEnumerator::next() {
  unsigned char rows[7];
  for (; mask_ < end_; ++mask_) {
    std::uint64_t mask = mask_;
    if (tf_only_) {
      for (int v = 0; v < n_; ++v) rows[v] = 0;
      bool triangle = false;
      for (std::size_t i = 0; i < pairs_.size() && !triangle; ++i) {
        if (!(mask >> i & 1)) continue;
        auto [u, v] = pairs_[i];
        if (rows[u] & rows[v]) triangle = true;
        rows[u] |= static_cast<unsigned char>(1u << v);
        rows[v] |= static_cast<unsigned char>(1u << u);
      }
      if (triangle) continue;
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs_.size(); ++i)
      if (mask >> i & 1) edges.push_back(pairs_[i]);
    ++mask_;
    return from_edge_list(n_, edges);
  }
  return std::nullopt;
}

LabeledGraphEnumerator enumerate_labeled_graphs(int n, bool triangle_free_only) {
  return {n, triangle_free_only};
}

}  // namespace hardcore
