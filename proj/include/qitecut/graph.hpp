#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qitecut {

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1. Immutable after construction.
///
/// Edges are stored sorted by (u, v) with u < v; that order is the edge index
/// used by EdgeWeights and ITD schedules.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (auto& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u));
      if (e.u < 0 || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
        throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                    std::to_string(edges_[i].v) + ")");
    }
    adjacency_.assign(static_cast<std::size_t>(n), {});
    incident_.assign(static_cast<std::size_t>(n), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
      incident_[e.u].push_back(i);
      incident_[e.v].push_back(i);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  }

  /// Unit-weight graph from (u, v) pairs.
  static Graph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
    return Graph(n, std::move(edges));
  }

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  std::span<const int> neighbors(int v) const { return adjacency_.at(v); }
  /// Indices into edges() of the edges touching v.
  std::span<const std::size_t> incident_edges(int v) const { return incident_.at(v); }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
    const auto& nb = adjacency_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool unit_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
  }

  double total_weight() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.weight;
    return s;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// Component label per vertex (labels 0,1,... in order of lowest member).
inline std::vector<int> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(v)) {
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() <= 1) return true;
  auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
}

/// Smallest-index vertex of maximum degree.
inline int max_degree_vertex(const Graph& g) {
  if (g.vertex_count() < 1) throw std::invalid_argument("max_degree_vertex on empty graph");
  int best = 0;
  for (int v = 1; v < g.vertex_count(); ++v)
    if (g.degree(v) > g.degree(best)) best = v;
  return best;
}

/// Cut value of a 0/1 side assignment (sum of weights of edges crossing sides).
template <typename Assignment>
double cut_value(const Graph& g, const Assignment& side) {
  double c = 0.0;
  for (const auto& e : g.edges())
    if ((side[e.u] != 0) != (side[e.v] != 0)) c += e.weight;
  return c;
}

}  // namespace qitecut
