#pragma once

// Real product states and the closed-form expectation values used by the
// linear-Ansatz imaginary-time step.
//
// Qubit j is cos(phi_j)|0> + sin(phi_j)|1>, so <Z_j> = cos(2 phi_j),
// <X_j> = sin(2 phi_j) and <Y_j> = 0. The Hamiltonian is
// H = sum_e c_e Z_u Z_v with c_e = base weight * h_e.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qitecut/graph.hpp"

namespace qitecut {

struct ProductState {
  std::vector<double> phi;

  std::size_t size() const { return phi.size(); }
  double z_expectation(std::size_t j) const { return std::cos(2.0 * phi[j]); }
  double x_expectation(std::size_t j) const { return std::sin(2.0 * phi[j]); }

  friend bool operator==(const ProductState&, const ProductState&) = default;
};

/// Per-edge Hamiltonian coefficients h_e, indexed like Graph::edges().
struct EdgeWeights {
  std::vector<double> h;

  static EdgeWeights ones(const Graph& g) { return {std::vector<double>(g.edge_count(), 1.0)}; }
};

namespace detail {

inline void check_dims(const ProductState& st, const Graph& g, const EdgeWeights& w) {
  if (st.size() != static_cast<std::size_t>(g.vertex_count()))
    throw std::invalid_argument("state size does not match vertex count");
  if (w.h.size() != g.edge_count()) throw std::invalid_argument("weight count does not match edge count");
}

inline std::vector<double> z_values(const ProductState& st) {
  std::vector<double> z(st.size());
  for (std::size_t j = 0; j < st.size(); ++j) z[j] = st.z_expectation(j);
  return z;
}

}  // namespace detail

/// |+> everywhere except |0> on the highest-degree vertex (lowest index on
/// ties). On a disconnected graph every component gets its own |0> qubit,
/// since a component left entirely in |+> never moves.
inline ProductState initial_state(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 1) throw std::invalid_argument("initial_state on empty graph");
  ProductState st{std::vector<double>(static_cast<std::size_t>(n), std::numbers::pi / 4)};
  const auto label = connected_components(g);
  std::vector<int> pick;
  for (int v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(label[v]);
    if (c >= pick.size()) pick.resize(c + 1, -1);
    if (pick[c] < 0 || g.degree(v) > g.degree(pick[c])) pick[c] = v;
  }
  for (int v : pick) st.phi[v] = 0.0;
  return st;
}

inline double energy(const ProductState& st, const Graph& g, const EdgeWeights& w) {
  detail::check_dims(st, g, w);
  const auto z = detail::z_values(st);
  double e = 0.0;
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) e += edges[k].weight * w.h[k] * z[edges[k].u] * z[edges[k].v];
  return e;
}

/// <H^2> - <H>^2, clamped at zero below 1e-12.
///
/// Expanding H^2 into Z monomials, terms from vertex-disjoint edge pairs
/// factorize and cancel against <H>^2, so only pairs sharing a vertex remain:
///   same edge:        c^2 (1 - z_u^2 z_v^2)
///   shared vertex k:  c c' z_i z_l (1 - z_k^2)   for edges (i,k), (k,l)
inline double energy_variance(const ProductState& st, const Graph& g, const EdgeWeights& w) {
  detail::check_dims(st, g, w);
  const auto z = detail::z_values(st);
  const auto edges = g.edges();
  double var = 0.0;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double c = edges[k].weight * w.h[k];
    const double zz = z[edges[k].u] * z[edges[k].v];
    var += c * c * (1.0 - zz * zz);
  }
  for (int k = 0; k < g.vertex_count(); ++k) {
    const double one_minus = 1.0 - z[k] * z[k];
    if (one_minus == 0.0) continue;
    // sum over ordered pairs of distinct incident edges = (S^2 - sum sq)
    double s = 0.0, sq = 0.0;
    for (auto idx : g.incident_edges(k)) {
      const auto& e = edges[idx];
      const int other = e.u == k ? e.v : e.u;
      const double t = e.weight * w.h[idx] * z[other];
      s += t;
      sq += t * t;
    }
    var += one_minus * (s * s - sq);
  }
  return var < 1e-12 ? 0.0 : var;
}

/// b_j = -(i/2)<[H, Y_j]> = -<X_j> * sum_{i ~ j} c_ij <Z_i>.
inline std::vector<double> b_vector(const ProductState& st, const Graph& g, const EdgeWeights& w) {
  detail::check_dims(st, g, w);
  const auto z = detail::z_values(st);
  std::vector<double> field(st.size(), 0.0);
  const auto edges = g.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double c = edges[k].weight * w.h[k];
    field[edges[k].u] += c * z[edges[k].v];
    field[edges[k].v] += c * z[edges[k].u];
  }
  for (std::size_t j = 0; j < field.size(); ++j) field[j] *= -st.x_expectation(j);
  return field;
}

/// S_ij = <Y_i Y_j>. For a real product state <Y_j> = 0, so the off-diagonal
/// entries <Y_i><Y_j> vanish and S is the identity.
inline Eigen::MatrixXd s_matrix(const ProductState& st) {
  const auto n = static_cast<Eigen::Index>(st.size());
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);  // <Y_j> of a real single-qubit state
  Eigen::MatrixXd s = y * y.transpose();
  s.diagonal().setOnes();
  return s;
}

/// Applies prod_j exp(-i theta_j Y_j); a Y rotation advances the angle.
inline ProductState apply_y_rotations(const ProductState& st, std::span<const double> theta) {
  if (theta.size() != st.size()) throw std::invalid_argument("rotation vector size mismatch");
  ProductState out = st;
  for (std::size_t j = 0; j < theta.size(); ++j) out.phi[j] += theta[j];
  return out;
}

}  // namespace qitecut
