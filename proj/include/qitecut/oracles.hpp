#pragma once

// Ground truth for small instances: exhaustive MaxCut, a dense 2^n
// statevector path for checking the product-state formulas, exact
// imaginary-time evolution, and the sequential greedy baseline.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qitecut/errors.hpp"
#include "qitecut/graph.hpp"
#include "qitecut/parallel.hpp"
#include "qitecut/product_state.hpp"
#include "qitecut/random.hpp"

namespace qitecut {

inline constexpr int kBruteForceCap = 24;
inline constexpr std::size_t kGroundStateListCap = 1024;

/// Bit j of a ground-state mask is the side of vertex j.
struct CutOracleResult {
  int c_max = 0;
  double e0 = 0.0;  // |E| - 2 c_max
  std::vector<std::uint64_t> ground_states;  // sorted, closed under global flip
  bool truncated = false;
  std::uint64_t ground_state_count = 0;
  std::vector<std::uint64_t> cut_histogram;  // index = cut value, over all 2^n assignments
};

namespace detail {

struct CutChunk {
  int best = -1;
  std::uint64_t best_count = 0;
  std::vector<std::uint64_t> states;  // half-states (vertex 0 on side 0)
  std::vector<std::uint64_t> histogram;
};

inline int cut_of_mask(const std::vector<std::uint64_t>& adj, std::uint64_t z) {
  int c = 0;
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (z >> v & 1) c += std::popcount(adj[v] & ~z);
  return c;
}

}  // namespace detail

/// Exact MaxCut by enumerating the 2^(n-1) assignments with vertex 0 fixed,
/// Gray-code order, O(1) cut update per flip.
inline CutOracleResult brute_force_maxcut(const Graph& g, int cap = kBruteForceCap, int jobs = 1) {
  const int n = g.vertex_count();
  if (n > cap || n > 63)
    throw UnsupportedError("brute force limited to " + std::to_string(std::min(cap, 63)) + " vertices (got " +
                           std::to_string(n) + ")");
  if (!g.unit_weights()) throw UnsupportedError("brute force requires unit edge weights");
  const int m = static_cast<int>(g.edge_count());

  CutOracleResult out;
  out.cut_histogram.assign(static_cast<std::size_t>(m) + 1, 0);
  if (n == 0) {
    out.ground_states = {0};
    out.ground_state_count = 1;
    out.cut_histogram[0] = 1;
    return out;
  }

  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }

  const int free_bits = n - 1;  // vertices 1..n-1
  const int high = std::min(free_bits, 6);
  const int low = free_bits - high;
  const std::size_t chunks = std::size_t{1} << high;
  const std::size_t half_cap = kGroundStateListCap / 2;
  std::vector<detail::CutChunk> results(chunks);

  parallel_for(chunks, jobs, [&](std::size_t chunk) {
    auto& r = results[chunk];
    r.histogram.assign(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t z = static_cast<std::uint64_t>(chunk) << (1 + low);
    int cut = detail::cut_of_mask(adj, z);
    auto visit = [&] {
      ++r.histogram[cut];
      if (cut > r.best) {
        r.best = cut;
        r.best_count = 0;
        r.states.clear();
      }
      if (cut == r.best) {
        ++r.best_count;
        if (r.states.size() < half_cap) r.states.push_back(z);
      }
    };
    visit();
    const std::uint64_t steps = std::uint64_t{1} << low;
    for (std::uint64_t i = 1; i < steps; ++i) {
      const int v = std::countr_zero(i) + 1;
      const std::uint64_t same = (z >> v & 1) ? z : ~z;  // vertices on v's side
      const int uncut = std::popcount(adj[v] & same & ~(std::uint64_t{1} << v));
      cut += 2 * uncut - std::popcount(adj[v]);
      z ^= std::uint64_t{1} << v;
      visit();
    }
  });

  int best = -1;
  for (const auto& r : results) best = std::max(best, r.best);
  std::vector<std::uint64_t> half;
  std::uint64_t half_count = 0;
  for (const auto& r : results) {
    for (std::size_t c = 0; c < r.histogram.size(); ++c) out.cut_histogram[c] += 2 * r.histogram[c];
    if (r.best != best) continue;
    half_count += r.best_count;
    half.insert(half.end(), r.states.begin(), r.states.end());
  }
  std::sort(half.begin(), half.end());
  if (half.size() > half_cap) half.resize(half_cap);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  for (auto z : half) {
    out.ground_states.push_back(z);
    out.ground_states.push_back(~z & all);
  }
  std::sort(out.ground_states.begin(), out.ground_states.end());
  out.ground_states.erase(std::unique(out.ground_states.begin(), out.ground_states.end()), out.ground_states.end());
  out.ground_state_count = 2 * half_count;
  out.truncated = out.ground_state_count > out.ground_states.size();
  out.c_max = best;
  out.e0 = static_cast<double>(m) - 2.0 * best;
  return out;
}

/// Energy of a computational basis state under sum_e c_e Z_u Z_v.
inline double basis_energy(const Graph& g, const EdgeWeights& w, std::uint64_t z) {
  double e = 0.0;
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const bool differ = ((z >> edges[k].u) ^ (z >> edges[k].v)) & 1;
    e += edges[k].weight * w.h[k] * (differ ? -1.0 : 1.0);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Dense statevector oracle. Basis index bit j holds qubit j.

using DenseVector = Eigen::VectorXcd;

inline constexpr int kDenseStateCap = 12;
inline constexpr int kDenseEvolutionCap = 20;

inline DenseVector dense_state(const ProductState& st) {
  const int n = static_cast<int>(st.size());
  if (n > kDenseStateCap) throw UnsupportedError("dense_state limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << n;
  DenseVector v(static_cast<Eigen::Index>(dim));
  for (std::size_t z = 0; z < dim; ++z) {
    double amp = 1.0;
    for (int j = 0; j < n; ++j) amp *= (z >> j & 1) ? std::sin(st.phi[j]) : std::cos(st.phi[j]);
    v[static_cast<Eigen::Index>(z)] = amp;
  }
  return v;
}

namespace pauli {

inline DenseVector apply_y(const DenseVector& in, int j) {
  DenseVector out(in.size());
  const std::complex<double> i(0.0, 1.0);
  const Eigen::Index bit = Eigen::Index{1} << j;
  for (Eigen::Index z = 0; z < in.size(); ++z) out[z ^ bit] = (z & bit) ? -i * in[z] : i * in[z];
  return out;
}

inline DenseVector apply_hadamard(const DenseVector& in, int j) {
  DenseVector out(in.size());
  const double r = 1.0 / std::sqrt(2.0);
  const Eigen::Index bit = Eigen::Index{1} << j;
  for (Eigen::Index z = 0; z < in.size(); ++z) {
    if (z & bit) continue;
    out[z] = r * (in[z] + in[z | bit]);
    out[z | bit] = r * (in[z] - in[z | bit]);
  }
  return out;
}

/// Applies sum over the selected edges of c_e Z_u Z_v (diagonal).
inline DenseVector apply_zz_sum(const DenseVector& in, const Graph& g, const EdgeWeights& w,
                                std::optional<int> only_incident_to = std::nullopt) {
  DenseVector out(in.size());
  const auto edges = g.edges();
  for (Eigen::Index z = 0; z < in.size(); ++z) {
    double d = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (only_incident_to && edges[k].u != *only_incident_to && edges[k].v != *only_incident_to) continue;
      const bool differ = ((z >> edges[k].u) ^ (z >> edges[k].v)) & 1;
      d += edges[k].weight * w.h[k] * (differ ? -1.0 : 1.0);
    }
    out[z] = d * in[z];
  }
  return out;
}

}  // namespace pauli

struct HamiltonianObs {
  EdgeWeights w;
};
struct HamiltonianSquaredObs {
  EdgeWeights w;
};
struct YYObs {
  int i = 0;
  int j = 0;
};
/// -H_j H_{G_j} H_j, with G_j the edges incident to j.
struct BOperatorObs {
  int j = 0;
  EdgeWeights w;
};
/// -(i/2)[H, Y_j]
struct CommutatorObs {
  int j = 0;
  EdgeWeights w;
};
using Observable = std::variant<HamiltonianObs, HamiltonianSquaredObs, YYObs, BOperatorObs, CommutatorObs>;

inline double dense_expectation(const DenseVector& v, const Graph& g, const Observable& obs) {
  auto inner = [&](const DenseVector& ov) { return v.dot(ov); };  // <v|ov>, conjugates v
  struct Visitor {
    const DenseVector& v;
    const Graph& g;
    decltype(inner)& ip;
    double operator()(const HamiltonianObs& o) const { return ip(pauli::apply_zz_sum(v, g, o.w)).real(); }
    double operator()(const HamiltonianSquaredObs& o) const {
      return ip(pauli::apply_zz_sum(pauli::apply_zz_sum(v, g, o.w), g, o.w)).real();
    }
    double operator()(const YYObs& o) const { return ip(pauli::apply_y(pauli::apply_y(v, o.j), o.i)).real(); }
    double operator()(const BOperatorObs& o) const {
      auto t = pauli::apply_hadamard(v, o.j);
      t = pauli::apply_zz_sum(t, g, o.w, o.j);
      t = pauli::apply_hadamard(t, o.j);
      return -ip(t).real();
    }
    double operator()(const CommutatorObs& o) const {
      const auto hy = pauli::apply_zz_sum(pauli::apply_y(v, o.j), g, o.w);
      const auto yh = pauli::apply_y(pauli::apply_zz_sum(v, g, o.w), o.j);
      const std::complex<double> c = ip(hy) - ip(yh);
      return (std::complex<double>(0.0, -0.5) * c).real();
    }
  };
  return std::visit(Visitor{v, g, inner}, obs);
}

/// exp(-tau H) |v> / norm. H is diagonal, so this is elementwise scaling.
inline DenseVector exact_imaginary_step(const DenseVector& v, const Graph& g, const EdgeWeights& w, double tau) {
  if (g.vertex_count() > kDenseEvolutionCap) throw UnsupportedError("exact evolution limited to 20 qubits");
  if (v.size() != (Eigen::Index{1} << g.vertex_count())) throw std::invalid_argument("vector dimension mismatch");
  DenseVector out(v.size());
  for (Eigen::Index z = 0; z < v.size(); ++z)
    out[z] = std::exp(-tau * basis_energy(g, w, static_cast<std::uint64_t>(z))) * v[z];
  const double norm = out.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::domain_error("exact_imaginary_step: zero-norm state");
  return out / norm;
}

inline double dense_energy(const DenseVector& v, const Graph& g, const EdgeWeights& w) {
  double e = 0.0;
  for (Eigen::Index z = 0; z < v.size(); ++z) e += std::norm(v[z]) * basis_energy(g, w, static_cast<std::uint64_t>(z));
  return e / v.squaredNorm();
}

// ---------------------------------------------------------------------------
// Greedy baseline

struct GreedyResult {
  double cut = 0.0;
  std::vector<std::uint8_t> assignment;
};

/// Vertices in seeded random order; each joins the side cutting more edges to
/// already-placed neighbours (ties to side 0).
inline GreedyResult greedy_cut(const Graph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);

  GreedyResult out;
  out.assignment.assign(static_cast<std::size_t>(n), 0);
  std::vector<bool> placed(static_cast<std::size_t>(n), false);
  for (int v : order) {
    double gain0 = 0.0, gain1 = 0.0;  // cut weight if v goes to side 0 / 1
    for (auto idx : g.incident_edges(v)) {
      const auto& e = g.edge(idx);
      const int u = e.u == v ? e.v : e.u;
      if (!placed[u]) continue;
      (out.assignment[u] ? gain0 : gain1) += e.weight;
    }
    out.assignment[v] = gain1 > gain0 ? 1 : 0;
    placed[v] = true;
  }
  out.cut = cut_value(g, out.assignment);
  return out;
}

/// Best of `starts` greedy runs with seeds derived from `seed`.
inline GreedyResult multi_start_greedy(const Graph& g, int starts, std::uint64_t seed) {
  GreedyResult best;
  best.cut = -1.0;
  for (int i = 0; i < starts; ++i) {
    auto r = greedy_cut(g, derive_seed(seed, static_cast<std::uint64_t>(i)));
    if (r.cut > best.cut) best = std::move(r);
  }
  return best;
}

}  // namespace qitecut
