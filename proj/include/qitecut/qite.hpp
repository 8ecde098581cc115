#pragma once

// Linear-Ansatz quantum imaginary time evolution on real product states.
//
// Each step solves S a = b at the current state (S = <Y_i Y_j>,
// b_j = -(i/2)<[H, Y_j]>). The least-distance update for exp(-i tau A) with
// these definitions is A = -sum_j a_j Y_j: the energy gradient along phi_j is
// 2 b_j, so rotating phi by -tau * a descends. States are therefore realized
// as phi[s] = phi[0] - tau_s * cumulative[s], cumulative[s] = a[1] + ... + a[s].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qitecut/errors.hpp"
#include "qitecut/graph.hpp"
#include "qitecut/parallel.hpp"
#include "qitecut/product_state.hpp"
#include "qitecut/random.hpp"

namespace qitecut {

/// How the imaginary-time parameter is chosen at step s.
enum class TauMode {
  /// One tau per step: for each candidate tau the whole s-step trajectory is
  /// recomputed (coefficients a[s'] at the states reached with that tau), and
  /// the tau minimizing the step-s energy wins.
  rederived,
  /// a[s'] fixed along the realized trajectory; tau_s minimizes the energy of
  /// phi[0] - tau * cumulative[s].
  cumulative,
  /// Plain stepping: tau_s minimizes the energy of phi[s-1] - tau * a[s].
  sequential,
  /// A single user-supplied tau for every step, no search.
  fixed,
};

inline const char* to_string(TauMode m) {
  switch (m) {
    case TauMode::rederived: return "rederived";
    case TauMode::cumulative: return "cumulative";
    case TauMode::sequential: return "sequential";
    case TauMode::fixed: return "fixed";
  }
  return "?";
}

inline TauMode parse_tau_mode(const std::string& s) {
  if (s == "rederived") return TauMode::rederived;
  if (s == "cumulative") return TauMode::cumulative;
  if (s == "sequential") return TauMode::sequential;
  if (s == "fixed") return TauMode::fixed;
  throw ParseError("unknown tau mode '" + s + "' (rederived|cumulative|sequential|fixed)");
}

struct TauGrid {
  double min = 0.0;
  double max = 1.0;
  int points = 201;

  double at(int i) const { return points == 1 ? min : min + (max - min) * i / (points - 1); }
};

/// Imaginary-time-dependent weights: excised edges carry h = 1 - f(s) with
/// f(s) = ramp[s-1] for s <= ramp.size() and 0 afterwards.
struct ItdSchedule {
  std::vector<std::size_t> excised_edges;
  std::vector<double> ramp{1.0, 0.5};

  double f(int step) const {
    return step >= 1 && static_cast<std::size_t>(step) <= ramp.size() ? ramp[step - 1] : 0.0;
  }
  /// First step at which the Hamiltonian equals the target graph's.
  int settle_step() const { return static_cast<int>(ramp.size()) + 1; }

  void validate(std::size_t edge_count) const {
    for (auto idx : excised_edges)
      if (idx >= edge_count)
        throw std::out_of_range("excised edge index " + std::to_string(idx) + " >= edge count " +
                                std::to_string(edge_count));
    for (std::size_t i = 0; i < ramp.size(); ++i) {
      if (!(ramp[i] >= 0.0 && ramp[i] <= 1.0)) throw std::invalid_argument("ramp values must lie in [0,1]");
      if (i > 0 && ramp[i] > ramp[i - 1]) throw std::invalid_argument("ramp must be non-increasing");
    }
  }
};

struct QiteConfig {
  int max_steps = 10;
  TauGrid tau_grid;
  double golden_tol = 1e-6;
  double variance_tol = 1e-8;
  std::optional<ItdSchedule> itd;
  TauMode tau_mode = TauMode::rederived;
  double fixed_tau = 0.1;
  /// In search modes, keep the previous state when no candidate lowers the
  /// step-s energy.
  bool monotone_guard = true;

  void validate() const {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (tau_grid.points < 2) throw std::invalid_argument("tau grid needs at least 2 points");
    if (tau_grid.min != 0.0) throw std::invalid_argument("tau grid must start at 0");
    if (!(tau_grid.max > tau_grid.min)) throw std::invalid_argument("tau grid max must exceed min");
    if (!(golden_tol > 0.0)) throw std::invalid_argument("golden_tol must be positive");
    if (!(variance_tol >= 0.0)) throw std::invalid_argument("variance_tol must be non-negative");
  }
};

enum class Termination { eigenstate, step_budget };

inline const char* to_string(Termination t) { return t == Termination::eigenstate ? "eigenstate" : "step_budget"; }

struct StepRecord {
  int step = 0;
  double energy = 0.0;        // under H[s]
  double final_energy = 0.0;  // under the target Hamiltonian (all h = 1)
  double variance = 0.0;      // under the target Hamiltonian
  double tau = 0.0;
  std::vector<double> a;
  std::vector<double> cumulative;
  ProductState state;
  bool retained = false;  // guard kept the previous state
};

struct RunResult {
  ProductState initial_state;
  std::vector<StepRecord> trajectory;
  ProductState final_state;
  Termination terminated_by = Termination::step_budget;

  int steps_taken() const { return static_cast<int>(trajectory.size()); }

  /// State after step s; runs that stopped early stay at their final state.
  const ProductState& state_at(int s) const {
    if (s <= 0) return initial_state;
    if (s > steps_taken()) return final_state;
    return trajectory[static_cast<std::size_t>(s - 1)].state;
  }
  double final_energy() const { return trajectory.empty() ? 0.0 : trajectory.back().final_energy; }
};

inline EdgeWeights weights_at_step(const Graph& g, const ItdSchedule* sched, int step) {
  if (step < 1) throw std::invalid_argument("step index must be >= 1");
  EdgeWeights w = EdgeWeights::ones(g);
  if (sched == nullptr) return w;
  sched->validate(g.edge_count());
  const double h = 1.0 - sched->f(step);
  for (auto idx : sched->excised_edges) w.h[idx] = h;
  return w;
}

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kStallEnergyTolerance = 1e-12;

/// Coefficients of the linear Ansatz at `state`: the solution of S a = b.
inline std::vector<double> qite_step(const Graph& g, const ProductState& state, const EdgeWeights& w) {
  const Eigen::MatrixXd s = s_matrix(state);
  const auto b = b_vector(state, g, w);
  const auto n = static_cast<Eigen::Index>(b.size());
  const double deviation = n == 0 ? 0.0 : (s - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (deviation > kIdentityTolerance)
    throw InvariantError("S matrix deviates from identity by " + std::to_string(deviation) +
                         "; state is not a real product state");
  const Eigen::VectorXd a = s.ldlt().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), n));
  return {a.data(), a.data() + a.size()};
}

namespace detail {

inline ProductState rotate_back(const ProductState& base, const std::vector<double>& direction, double tau) {
  ProductState out = base;
  for (std::size_t j = 0; j < direction.size(); ++j) out.phi[j] -= tau * direction[j];
  return out;
}

/// Golden-section refinement of a grid minimum. `values` holds the objective
/// at every grid point. Returns (tau, value) with value <= the grid minimum.
template <typename Objective>
std::pair<double, double> refine_grid_minimum(const Objective& objective, const TauGrid& grid,
                                              const std::vector<double>& values, double tol) {
  const int best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
  double lo = grid.at(std::max(best - 1, 0));
  double hi = grid.at(std::min(best + 1, grid.points - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = objective(c), fd = objective(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = objective(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = objective(mid);
  if (fmid < values[best]) return {mid, fmid};
  return {grid.at(best), values[best]};
}

template <typename Objective>
std::pair<double, double> line_search(const Objective& objective, const TauGrid& grid, double tol) {
  std::vector<double> values(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) values[i] = objective(grid.at(i));
  return refine_grid_minimum(objective, grid, values, tol);
}

/// Trajectory for one fixed tau using the closed-form coefficients (S = I).
/// Calls visit(step, state) after each step.
template <typename Visit>
void propagate_fixed_tau(const Graph& g, const ProductState& init, const std::vector<EdgeWeights>& weights,
                         double tau, int steps, Visit&& visit) {
  std::vector<double> cumulative(init.size(), 0.0);
  ProductState st = init;
  for (int s = 1; s <= steps; ++s) {
    const auto b = b_vector(st, g, weights[s]);
    for (std::size_t j = 0; j < b.size(); ++j) cumulative[j] += b[j];
    st = rotate_back(init, cumulative, tau);
    visit(s, st);
  }
}

}  // namespace detail

/// Runs linear-Ansatz QITE from initial_state(g).
inline RunResult run(const Graph& g, const QiteConfig& cfg) {
  cfg.validate();
  if (g.vertex_count() < 1) throw std::invalid_argument("run: empty graph");
  const ItdSchedule* sched = cfg.itd ? &*cfg.itd : nullptr;
  if (sched) sched->validate(g.edge_count());
  const int settle = sched ? sched->settle_step() : 1;
  const EdgeWeights ones = EdgeWeights::ones(g);

  std::vector<EdgeWeights> weights(static_cast<std::size_t>(cfg.max_steps) + 1);
  for (int s = 1; s <= cfg.max_steps; ++s) weights[s] = weights_at_step(g, sched, s);

  RunResult out;
  out.initial_state = initial_state(g);
  const ProductState& init = out.initial_state;
  const auto n = init.size();

  // rederived: energy table over the grid, energies[i][s-1]
  std::vector<std::vector<double>> grid_energy;
  if (cfg.tau_mode == TauMode::rederived) {
    grid_energy.resize(static_cast<std::size_t>(cfg.tau_grid.points));
    for (int i = 0; i < cfg.tau_grid.points; ++i) {
      auto& row = grid_energy[i];
      row.reserve(static_cast<std::size_t>(cfg.max_steps));
      detail::propagate_fixed_tau(g, init, weights, cfg.tau_grid.at(i), cfg.max_steps,
                                  [&](int s, const ProductState& st) { row.push_back(energy(st, g, weights[s])); });
    }
  }

  // Realized trajectory for a single tau through the guarded solver.
  auto realize_fixed = [&](double tau, int steps, std::vector<double>& a_last, std::vector<double>& cumulative) {
    cumulative.assign(n, 0.0);
    ProductState st = init;
    for (int s = 1; s <= steps; ++s) {
      a_last = qite_step(g, st, weights[s]);
      for (std::size_t j = 0; j < n; ++j) cumulative[j] += a_last[j];
      st = detail::rotate_back(init, cumulative, tau);
    }
    return st;
  };

  ProductState prev = init;
  double prev_tau = 0.0;
  std::vector<double> cumulative(n, 0.0);

  for (int s = 1; s <= cfg.max_steps; ++s) {
    const EdgeWeights& w = weights[s];
    StepRecord rec;
    rec.step = s;
    ProductState candidate;
    std::vector<double> a_s;
    std::vector<double> cum_s;
    double tau = 0.0;

    switch (cfg.tau_mode) {
      case TauMode::rederived: {
        std::vector<double> column(static_cast<std::size_t>(cfg.tau_grid.points));
        for (int i = 0; i < cfg.tau_grid.points; ++i) column[i] = grid_energy[i][s - 1];
        auto objective = [&](double t) {
          double e = 0.0;
          detail::propagate_fixed_tau(g, init, weights, t, s, [&](int step, const ProductState& st) {
            if (step == s) e = energy(st, g, w);
          });
          return e;
        };
        tau = detail::refine_grid_minimum(objective, cfg.tau_grid, column, cfg.golden_tol).first;
        candidate = realize_fixed(tau, s, a_s, cum_s);
        break;
      }
      case TauMode::cumulative: {
        a_s = qite_step(g, prev, w);
        cum_s = cumulative;
        for (std::size_t j = 0; j < n; ++j) cum_s[j] += a_s[j];
        auto objective = [&](double t) { return energy(detail::rotate_back(init, cum_s, t), g, w); };
        tau = detail::line_search(objective, cfg.tau_grid, cfg.golden_tol).first;
        candidate = detail::rotate_back(init, cum_s, tau);
        break;
      }
      case TauMode::sequential: {
        a_s = qite_step(g, prev, w);
        cum_s = cumulative;
        for (std::size_t j = 0; j < n; ++j) cum_s[j] += a_s[j];
        auto objective = [&](double t) { return energy(detail::rotate_back(prev, a_s, t), g, w); };
        tau = detail::line_search(objective, cfg.tau_grid, cfg.golden_tol).first;
        candidate = detail::rotate_back(prev, a_s, tau);
        break;
      }
      case TauMode::fixed: {
        a_s = qite_step(g, prev, w);
        cum_s = cumulative;
        for (std::size_t j = 0; j < n; ++j) cum_s[j] += a_s[j];
        tau = cfg.fixed_tau;
        candidate = detail::rotate_back(init, cum_s, tau);
        break;
      }
    }

    const double candidate_energy = energy(candidate, g, w);
    const bool guarded = cfg.monotone_guard && cfg.tau_mode != TauMode::fixed;
    if (guarded && candidate_energy > energy(prev, g, w)) {
      rec.retained = true;
      rec.state = prev;
      rec.tau = prev_tau;
    } else {
      rec.state = std::move(candidate);
      rec.tau = tau;
    }
    if (rec.retained && cfg.tau_mode != TauMode::cumulative) {
      // nothing applied this step
      rec.a.assign(n, 0.0);
      rec.cumulative = cumulative;
    } else {
      rec.a = std::move(a_s);
      rec.cumulative = std::move(cum_s);
      cumulative = rec.cumulative;
    }
    rec.energy = energy(rec.state, g, w);
    rec.final_energy = energy(rec.state, g, ones);
    rec.variance = energy_variance(rec.state, g, ones);
    // Rederived steps re-pick tau for the whole trajectory, so an eigenstate
    // only ends the run once a re-optimized step fails to leave it.
    bool stalled = s >= settle && rec.variance < cfg.variance_tol;
    if (stalled && cfg.tau_mode == TauMode::rederived)
      stalled = energy_variance(prev, g, ones) < cfg.variance_tol &&
                rec.final_energy >= energy(prev, g, ones) - kStallEnergyTolerance;
    prev = rec.state;
    prev_tau = rec.tau;
    out.trajectory.push_back(std::move(rec));
    if (stalled) {
      out.terminated_by = Termination::eigenstate;
      break;
    }
  }
  out.final_state = out.trajectory.back().state;
  return out;
}

// ---------------------------------------------------------------------------
// Excised-pair search

using EdgePair = std::pair<std::size_t, std::size_t>;

/// Judges a finished run. An empty predicate ranks runs by final energy only.
using SuccessPredicate = std::function<bool(const Graph&, const RunResult&)>;

struct PairSearchMode {
  enum class Kind { exhaustive, random } kind = Kind::exhaustive;
  int k = 100;
  std::uint64_t seed = 0;

  static PairSearchMode exhaustive() { return {}; }
  static PairSearchMode random(int k, std::uint64_t seed) { return {Kind::random, k, seed}; }
};

struct PairOutcome {
  std::optional<EdgePair> pair;  // empty for the constant-weight run
  bool success = false;
  double final_energy = 0.0;
  ProductState final_state;
};

struct ItdSearchResult {
  std::optional<EdgePair> best_pair;
  RunResult best;
  bool success = false;
  /// Constant-weight run first, then every candidate pair in trial order.
  std::vector<PairOutcome> table;

  std::size_t success_count() const {
    return static_cast<std::size_t>(std::count_if(table.begin(), table.end(),
                                                  [](const PairOutcome& p) { return p.pair && p.success; }));
  }
};

/// Lexicographic index -> pair (i < j) over m edges.
inline EdgePair pair_from_index(std::size_t index, std::size_t m) {
  std::size_t i = 0;
  while (index >= m - 1 - i) {
    index -= m - 1 - i;
    ++i;
  }
  return {i, i + 1 + index};
}

inline std::vector<EdgePair> candidate_pairs(std::size_t m, const PairSearchMode& mode) {
  std::vector<EdgePair> pairs;
  const std::size_t total = m < 2 ? 0 : m * (m - 1) / 2;
  if (mode.kind == PairSearchMode::Kind::exhaustive || static_cast<std::size_t>(mode.k) >= total) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  Rng rng(mode.seed);
  std::set<std::size_t> seen;
  while (pairs.size() < static_cast<std::size_t>(mode.k)) {
    const auto idx = static_cast<std::size_t>(uniform_below(rng, total));
    if (seen.insert(idx).second) pairs.push_back(pair_from_index(idx, m));
  }
  return pairs;
}

/// Runs QITE once per excised edge pair and keeps the best outcome, ranked by
/// (success, lowest final energy, pair order). A constant-weight run that
/// already succeeds is returned directly with no pair.
inline ItdSearchResult itd_pair_search(const Graph& g, const QiteConfig& cfg, const PairSearchMode& mode,
                                       const SuccessPredicate& success = {}, int jobs = 1) {
  if (g.edge_count() < 2) throw std::invalid_argument("itd_pair_search needs at least two edges");
  QiteConfig plain_cfg = cfg;
  plain_cfg.itd.reset();
  ItdSearchResult out;
  out.best = run(g, plain_cfg);
  out.success = success && success(g, out.best);
  out.table.push_back({std::nullopt, out.success, out.best.final_energy(), out.best.final_state});
  if (out.success) return out;

  const ItdSchedule base = cfg.itd.value_or(ItdSchedule{});
  const auto pairs = candidate_pairs(g.edge_count(), mode);
  std::vector<PairOutcome> outcomes(pairs.size());
  std::vector<RunResult> runs(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    QiteConfig c = cfg;
    c.itd = base;
    c.itd->excised_edges = {pairs[i].first, pairs[i].second};
    runs[i] = run(g, c);
    outcomes[i] = {pairs[i], success && success(g, runs[i]), runs[i].final_energy(), runs[i].final_state};
  });

  // ranking key; the constant-weight run competes as an empty pair
  auto better = [](const PairOutcome& a, const PairOutcome& b) {
    if (a.success != b.success) return a.success;
    if (a.final_energy != b.final_energy) return a.final_energy < b.final_energy;
    if (a.pair.has_value() != b.pair.has_value()) return !a.pair.has_value();
    return a.pair < b.pair;
  };
  std::optional<std::size_t> best;
  PairOutcome best_outcome = out.table.front();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (better(outcomes[i], best_outcome)) {
      best = i;
      best_outcome = outcomes[i];
    }
  }
  out.table.insert(out.table.end(), outcomes.begin(), outcomes.end());
  if (best) {
    out.best = std::move(runs[*best]);
    out.best_pair = pairs[*best];
    out.success = best_outcome.success;
  }
  return out;
}

}  // namespace qitecut
