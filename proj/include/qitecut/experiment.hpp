#pragma once

// Per-graph analysis shared by the CLI sweeps and the acceptance suite:
// reference cut (exact or best known), constant-weight QITE, optional
// excised-pair search, and metrics at the requested steps.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qitecut/errors.hpp"
#include "qitecut/graph.hpp"
#include "qitecut/metrics.hpp"
#include "qitecut/oracles.hpp"
#include "qitecut/qite.hpp"

namespace qitecut {

struct ItdOptions {
  enum class Mode { off, exhaustive, random } mode = Mode::off;
  int k = 100;
  std::uint64_t seed = 0;
};

/// "off", "exhaustive" or "random:K".
inline ItdOptions parse_itd_option(const std::string& s, std::uint64_t seed = 0) {
  ItdOptions o;
  o.seed = seed;
  if (s == "off") return o;
  if (s == "exhaustive") {
    o.mode = ItdOptions::Mode::exhaustive;
    return o;
  }
  if (s.starts_with("random:")) {
    o.mode = ItdOptions::Mode::random;
    try {
      std::size_t used = 0;
      o.k = std::stoi(s.substr(7), &used);
      if (used != s.size() - 7 || o.k < 1) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("--itd random:K needs a positive integer K, got '" + s + "'");
    }
    return o;
  }
  throw ParseError("unknown --itd value '" + s + "' (off|exhaustive|random:K)");
}

inline std::string to_string(const ItdOptions& o) {
  switch (o.mode) {
    case ItdOptions::Mode::off: return "off";
    case ItdOptions::Mode::exhaustive: return "exhaustive";
    case ItdOptions::Mode::random: return "random:" + std::to_string(o.k);
  }
  return "?";
}

struct AnalysisOptions {
  QiteConfig qite;
  ItdOptions itd;
  std::vector<int> steps{1, 4, 10};
  int brute_force_cap = kBruteForceCap;
  int greedy_starts = 200;
  int shots = 0;
  std::uint64_t seed = 0;
};

struct StepMetrics {
  int step = 0;
  double energy = 0.0;  // target Hamiltonian
  double tau = 0.0;
  MetricsReport metrics;
};

struct GraphAnalysis {
  std::string id;
  int n = 0;
  std::size_t edge_count = 0;
  std::optional<CutOracleResult> oracle;
  ReferenceCut reference;
  RunResult plain;
  /// Run reported in the metrics: the plain run, or the excised-pair winner.
  RunResult chosen;
  std::optional<EdgePair> itd_pair;
  bool itd_searched = false;
  std::size_t itd_successful_pairs = 0;
  std::size_t itd_pairs_tried = 0;
  std::vector<StepMetrics> steps;
  std::optional<int> steps_to_target;
  double greedy_cut = 0.0;  // multi-start greedy, only computed without an oracle
};

inline GraphAnalysis analyze_graph(const Graph& g, const std::string& id, const AnalysisOptions& opt) {
  GraphAnalysis out;
  out.id = id;
  out.n = g.vertex_count();
  out.edge_count = g.edge_count();
  if (g.vertex_count() <= opt.brute_force_cap) out.oracle = brute_force_maxcut(g, opt.brute_force_cap);

  QiteConfig plain_cfg = opt.qite;
  plain_cfg.itd.reset();
  out.plain = run(g, plain_cfg);
  out.chosen = out.plain;

  std::vector<ProductState> finals{out.plain.final_state};
  if (opt.itd.mode != ItdOptions::Mode::off && g.edge_count() >= 2) {
    const auto mode = opt.itd.mode == ItdOptions::Mode::exhaustive ? PairSearchMode::exhaustive()
                                                                   : PairSearchMode::random(opt.itd.k, opt.itd.seed);
    SuccessPredicate success;
    if (out.oracle) success = ground_overlap_above(*out.oracle);
    auto search = itd_pair_search(g, opt.qite, mode, success);
    out.itd_searched = true;
    out.itd_pair = search.best_pair;
    out.itd_successful_pairs = search.success_count();
    out.itd_pairs_tried = search.table.size() - 1;
    out.chosen = std::move(search.best);
    for (const auto& row : search.table) finals.push_back(row.final_state);
  }

  if (out.oracle) {
    out.reference = {static_cast<double>(out.oracle->c_max), true};
  } else {
    // best known: multi-start greedy and every QITE outcome seen
    out.greedy_cut = multi_start_greedy(g, opt.greedy_starts, opt.seed).cut;
    double best = out.greedy_cut;
    for (const auto& st : finals) best = std::max(best, cut_value(g, round_state(st)));
    for (const auto& z : sample_state(out.chosen.final_state, opt.shots, opt.seed))
      best = std::max(best, cut_value(g, z));
    out.reference = {best, false};
  }

  const CutOracleResult* oracle = out.oracle ? &*out.oracle : nullptr;
  for (int s : opt.steps) {
    const auto& st = out.chosen.state_at(s);
    StepMetrics sm;
    sm.step = s;
    sm.energy = energy(st, g, EdgeWeights::ones(g));
    sm.tau = s <= out.chosen.steps_taken() ? out.chosen.trajectory[s - 1].tau : out.chosen.trajectory.back().tau;
    sm.metrics = evaluate_state(st, g, out.reference, oracle, opt.shots, opt.seed);
    out.steps.push_back(sm);
  }
  out.steps_to_target = steps_to_ratio(out.chosen, g, out.reference);
  for (auto& sm : out.steps) sm.metrics.steps_to_target = out.steps_to_target;
  return out;
}

}  // namespace qitecut
