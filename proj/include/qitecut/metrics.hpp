#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qitecut/graph.hpp"
#include "qitecut/oracles.hpp"
#include "qitecut/product_state.hpp"
#include "qitecut/qite.hpp"
#include "qitecut/random.hpp"

namespace qitecut {

using Assignment = std::vector<std::uint8_t>;

/// Ratio threshold used for steps-to-target reporting.
inline constexpr double kTargetRatio = 0.93;
/// p_ground above this counts as convergence to the ground state.
inline constexpr double kGroundThreshold = 0.5;
/// Worst-case Goemans-Williamson ratio, drawn as a reference line only.
inline constexpr double kGoemansWilliamsonRatio = 0.878;

/// (total weight - <H>) / 2 under the target Hamiltonian.
inline double expected_cut(const ProductState& st, const Graph& g) {
  return 0.5 * (g.total_weight() - energy(st, g, EdgeWeights::ones(g)));
}

/// Probability that measuring `st` yields one of `ground_states`.
inline double p_ground(const ProductState& st, std::span<const std::uint64_t> ground_states) {
  if (ground_states.empty()) throw std::invalid_argument("p_ground: empty ground-state list");
  if (st.size() > 64) throw std::invalid_argument("p_ground: ground-state masks hold at most 64 qubits");
  std::vector<double> p0(st.size()), p1(st.size());
  for (std::size_t j = 0; j < st.size(); ++j) {
    const double c = std::cos(st.phi[j]), s = std::sin(st.phi[j]);
    p0[j] = c * c;
    p1[j] = s * s;
  }
  double total = 0.0;
  for (auto z : ground_states) {
    double p = 1.0;
    for (std::size_t j = 0; j < st.size() && p != 0.0; ++j) p *= (z >> j & 1) ? p1[j] : p0[j];
    total += p;
  }
  return total;
}

/// p_ground by full enumeration, for oracle results whose list was truncated.
inline double p_ground_exhaustive(const ProductState& st, const Graph& g, int c_max) {
  const int n = g.vertex_count();
  if (n > kBruteForceCap) throw UnsupportedError("p_ground_exhaustive limited to 24 vertices");
  double total = 0.0;
  Assignment side(static_cast<std::size_t>(n));
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
    for (int j = 0; j < n; ++j) side[j] = z >> j & 1;
    if (cut_value(g, side) != c_max) continue;
    double p = 1.0;
    for (int j = 0; j < n; ++j) {
      const double a = side[j] ? std::sin(st.phi[j]) : std::cos(st.phi[j]);
      p *= a * a;
    }
    total += p;
  }
  return total;
}

inline double p_ground(const ProductState& st, const Graph& g, const CutOracleResult& oracle) {
  return oracle.truncated ? p_ground_exhaustive(st, g, oracle.c_max) : p_ground(st, oracle.ground_states);
}

/// Most likely outcome per qubit; cos^2(phi) = 1/2 rounds to 0.
inline Assignment round_state(const ProductState& st) {
  Assignment z(st.size());
  for (std::size_t j = 0; j < st.size(); ++j) z[j] = std::cos(2.0 * st.phi[j]) > -1e-12 ? 0 : 1;
  return z;
}

/// Independent per-qubit draws with P(1) = sin^2(phi).
inline std::vector<Assignment> sample_state(const ProductState& st, int shots, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> p1(st.size());
  for (std::size_t j = 0; j < st.size(); ++j) p1[j] = std::sin(st.phi[j]) * std::sin(st.phi[j]);
  std::vector<Assignment> out(static_cast<std::size_t>(std::max(shots, 0)), Assignment(st.size()));
  for (auto& z : out)
    for (std::size_t j = 0; j < st.size(); ++j) z[j] = unit_uniform(rng) < p1[j] ? 1 : 0;
  return out;
}

inline std::uint64_t to_mask(const Assignment& z) {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < z.size() && j < 64; ++j) m |= std::uint64_t{z[j] != 0} << j;
  return m;
}

/// Cut value every ratio is taken against.
struct ReferenceCut {
  double value = 0.0;
  bool exact = false;  // false: best known, ratios are approximate
};

struct MetricsReport {
  double expected_cut = 0.0;
  double rounded_cut = 0.0;
  double best_sampled_cut = 0.0;
  double ratio_expected = 0.0;
  double ratio_rounded = 0.0;
  double ratio_sampled = 0.0;
  std::optional<double> p_ground;
  ReferenceCut reference;
  std::optional<int> steps_to_target;
};

inline double ratio(double cut, const ReferenceCut& ref) { return ref.value > 0.0 ? cut / ref.value : 1.0; }

/// First step whose expected-cut ratio reaches `target`; none if it never does.
inline std::optional<int> steps_to_ratio(const RunResult& r, const Graph& g, const ReferenceCut& ref,
                                         double target = kTargetRatio) {
  for (const auto& rec : r.trajectory)
    if (ratio(0.5 * (g.total_weight() - rec.final_energy), ref) >= target) return rec.step;
  return std::nullopt;
}

inline MetricsReport evaluate_state(const ProductState& st, const Graph& g, const ReferenceCut& ref,
                                    const CutOracleResult* oracle, int shots = 0, std::uint64_t seed = 0) {
  MetricsReport m;
  m.reference = ref;
  m.expected_cut = expected_cut(st, g);
  m.rounded_cut = cut_value(g, round_state(st));
  m.best_sampled_cut = m.rounded_cut;
  for (const auto& z : sample_state(st, shots, seed)) m.best_sampled_cut = std::max(m.best_sampled_cut, cut_value(g, z));
  m.ratio_expected = ratio(m.expected_cut, ref);
  m.ratio_rounded = ratio(m.rounded_cut, ref);
  m.ratio_sampled = ratio(m.best_sampled_cut, ref);
  if (oracle) m.p_ground = p_ground(st, g, *oracle);
  return m;
}

/// Success when the rounded final state attains `c_max`.
inline SuccessPredicate rounded_attains(int c_max) {
  return [c_max](const Graph& g, const RunResult& r) { return cut_value(g, round_state(r.final_state)) >= c_max; };
}

/// Success when the final state's ground-state probability exceeds `threshold`.
inline SuccessPredicate ground_overlap_above(const CutOracleResult& oracle, double threshold = kGroundThreshold) {
  return [oracle, threshold](const Graph& g, const RunResult& r) {
    return p_ground(r.final_state, g, oracle) > threshold;
  };
}

}  // namespace qitecut
