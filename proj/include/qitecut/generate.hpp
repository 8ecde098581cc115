#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qitecut/errors.hpp"
#include "qitecut/graph.hpp"
#include "qitecut/graph6.hpp"
#include "qitecut/random.hpp"

namespace qitecut {

struct EnumeratedSource {
  int n = 0;
};
struct ErdosRenyiSource {
  int n = 0;
  double p_min = 0.0;
  double p_max = 0.0;
  std::uint64_t seed = 0;
  bool connected = true;
};
struct FileSource {
  std::string path;
};
using Provenance = std::variant<EnumeratedSource, ErdosRenyiSource, FileSource>;

struct GraphEnsemble {
  std::vector<Graph> graphs;
  std::vector<std::string> ids;  // parallel to graphs
  Provenance provenance;
};

/// G(n, p): each pair (i, j), i < j in row order, included with probability p.
inline Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("erdos_renyi: negative n");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi: p outside [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit_uniform(rng) < p) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

namespace detail {

// Adjacency bitstring in graph6 column order, first pair in the most
// significant position so that integer order equals lexicographic order.
inline std::uint32_t adjacency_code(int n, const std::array<std::array<bool, 6>, 6>& adj,
                                    const std::array<int, 6>& perm) {
  std::uint32_t code = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) code = (code << 1) | (adj[perm[i]][perm[j]] ? 1u : 0u);
  return code;
}

}  // namespace detail

/// One graph per isomorphism class of connected graphs on n <= 6 vertices.
///
/// The representative is the relabeling whose adjacency bitstring is
/// lexicographically smallest; the result is sorted by that bitstring.
inline GraphEnsemble enumerate_connected(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_connected: n must be >= 1");
  if (n > 6)
    throw UnsupportedError("enumerate_connected supports n <= 6; load larger ensembles from a graph6 file");

  const int pairs = n * (n - 1) / 2;
  std::array<int, 6> perm{};
  std::vector<std::array<int, 6>> perms;
  std::iota(perm.begin(), perm.begin() + n, 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.begin() + n));

  std::vector<std::pair<int, int>> pair_list;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) pair_list.emplace_back(i, j);

  GraphEnsemble out;
  out.provenance = EnumeratedSource{n};
  for (std::uint32_t code = 0; code < (1u << pairs); ++code) {
    std::array<std::array<bool, 6>, 6> adj{};
    std::vector<std::pair<int, int>> edges;
    for (int k = 0; k < pairs; ++k) {
      if (code >> (pairs - 1 - k) & 1) {
        auto [i, j] = pair_list[k];
        adj[i][j] = adj[j][i] = true;
        edges.emplace_back(i, j);
      }
    }
    // keep only labelings that are already canonical
    bool canonical = true;
    for (const auto& p : perms) {
      if (detail::adjacency_code(n, adj, p) < code) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    Graph g = Graph::from_pairs(n, edges);
    if (!is_connected(g)) continue;
    out.ids.push_back(serialize_graph6(g));
    out.graphs.push_back(std::move(g));
  }
  return out;
}

namespace detail {
inline std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace detail

/// er-<n>-<p or pmin:pmax>-<seed>-<index>
inline std::string er_id(int n, const std::string& p, std::uint64_t seed, int index) {
  return "er-" + std::to_string(n) + "-" + p + "-" + std::to_string(seed) + "-" + std::to_string(index);
}

/// `count` graphs from G(n, p) with p ~ U(p_min, p_max) drawn per graph.
/// With `connected`, draws are rejected until connected (bounded attempts).
inline GraphEnsemble random_ensemble(int n, double p_min, double p_max, int count, std::uint64_t seed,
                                     bool connected, int max_attempts = 100000) {
  if (count < 1) throw std::invalid_argument("random_ensemble: count must be >= 1");
  if (!(0.0 <= p_min && p_min <= p_max && p_max <= 1.0))
    throw std::invalid_argument("random_ensemble: need 0 <= p_min <= p_max <= 1");
  GraphEnsemble out;
  out.provenance = ErdosRenyiSource{n, p_min, p_max, seed, connected};
  for (int index = 0; index < count; ++index) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
    int attempt = 0;
    for (;;) {
      const double p = uniform_in(rng, p_min, p_max);
      Graph g = erdos_renyi(n, p, rng());
      if (!connected || is_connected(g)) {
        out.graphs.push_back(std::move(g));
        out.ids.push_back(er_id(n, p_min == p_max ? detail::short_double(p_min)
                                                  : detail::short_double(p_min) + ":" + detail::short_double(p_max),
                                seed, index));
        break;
      }
      if (++attempt >= max_attempts)
        throw std::runtime_error("random_ensemble: no connected draw after " + std::to_string(max_attempts) +
                                 " attempts (n=" + std::to_string(n) + ")");
    }
  }
  return out;
}

inline GraphEnsemble load_ensemble(const std::string& path) {
  GraphEnsemble out;
  out.provenance = FileSource{path};
  out.graphs = read_graph6_file(path);
  for (const auto& g : out.graphs) out.ids.push_back(serialize_graph6(g));
  return out;
}

}  // namespace qitecut
