#pragma once

// JSON, CSV and SVG output for runs, oracle results and sweeps.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qitecut/experiment.hpp"
#include "qitecut/graph.hpp"
#include "qitecut/metrics.hpp"
#include "qitecut/oracles.hpp"
#include "qitecut/qite.hpp"

namespace qitecut {

using Json = nlohmann::ordered_json;

inline std::string bitstring(std::uint64_t z, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j) s[j] = (z >> j & 1) ? '1' : '0';
  return s;
}

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"n", g.vertex_count()}, {"num_edges", g.edge_count()}, {"edges", edges}};
}

inline Json to_json(const QiteConfig& c) {
  Json j{{"max_steps", c.max_steps},
         {"tau_min", c.tau_grid.min},
         {"tau_max", c.tau_grid.max},
         {"tau_points", c.tau_grid.points},
         {"golden_tol", c.golden_tol},
         {"variance_tol", c.variance_tol},
         {"tau_mode", to_string(c.tau_mode)},
         {"monotone_guard", c.monotone_guard}};
  if (c.tau_mode == TauMode::fixed) j["fixed_tau"] = c.fixed_tau;
  if (c.itd) j["itd"] = {{"excised_edges", c.itd->excised_edges}, {"ramp", c.itd->ramp}};
  return j;
}

inline Json to_json(const RunResult& r) {
  Json traj = Json::array();
  for (const auto& rec : r.trajectory) {
    traj.push_back({{"step", rec.step},
                    {"energy", rec.energy},
                    {"final_energy", rec.final_energy},
                    {"variance", rec.variance},
                    {"tau", rec.tau},
                    {"retained", rec.retained},
                    {"a", rec.a},
                    {"cumulative", rec.cumulative}});
  }
  return {{"steps_taken", r.steps_taken()},
          {"terminated_by", to_string(r.terminated_by)},
          {"initial_state", r.initial_state.phi},
          {"final_state", r.final_state.phi},
          {"trajectory", traj}};
}

inline Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
inline Json optional_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const MetricsReport& m) {
  return {{"expected_cut", m.expected_cut},
          {"rounded_cut", m.rounded_cut},
          {"best_sampled_cut", m.best_sampled_cut},
          {"ratio_expected", m.ratio_expected},
          {"ratio_rounded", m.ratio_rounded},
          {"ratio_sampled", m.ratio_sampled},
          {"p_ground", optional_json(m.p_ground)},
          {"reference_cut", m.reference.value},
          {"reference_exact", m.reference.exact},
          {"steps_to_93", optional_json(m.steps_to_target)}};
}

inline Json to_json(const CutOracleResult& r, int n) {
  Json states = Json::array();
  for (auto z : r.ground_states) states.push_back(bitstring(z, n));
  return {{"c_max", r.c_max},
          {"e0", r.e0},
          {"ground_state_count", r.ground_state_count},
          {"truncated", r.truncated},
          {"ground_states", states},
          {"cut_histogram", r.cut_histogram}};
}

inline Json pair_json(const std::optional<EdgePair>& p, const Graph& g) {
  if (!p) return nullptr;
  const auto& a = g.edge(p->first);
  const auto& b = g.edge(p->second);
  return {{"edge_indices", {p->first, p->second}}, {"edges", {{a.u, a.v}, {b.u, b.v}}}};
}

/// "u-v;x-y" or empty, for CSV cells.
inline std::string pair_cell(const std::optional<EdgePair>& p, const Graph& g) {
  if (!p) return "";
  const auto& a = g.edge(p->first);
  const auto& b = g.edge(p->second);
  return std::to_string(a.u) + "-" + std::to_string(a.v) + ";" + std::to_string(b.u) + "-" + std::to_string(b.v);
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline constexpr const char* kCsvHeader =
    "graph_id,n,num_edges,step,energy,ratio_expected,ratio_rounded,p_ground,tau,terminated_by,itd_pair";

inline void write_csv_rows(std::ostream& out, const GraphAnalysis& a, const Graph& g) {
  for (const auto& sm : a.steps) {
    out << csv_quote(a.id) << ',' << a.n << ',' << a.edge_count << ',' << sm.step << ',' << format_double(sm.energy)
        << ',' << format_double(sm.metrics.ratio_expected) << ',' << format_double(sm.metrics.ratio_rounded) << ','
        << (sm.metrics.p_ground ? format_double(*sm.metrics.p_ground) : "") << ',' << format_double(sm.tau) << ','
        << to_string(a.chosen.terminated_by) << ',' << csv_quote(pair_cell(a.itd_pair, g)) << '\n';
  }
}

/// Per-step means over an ensemble.
inline Json sweep_summary(const std::vector<GraphAnalysis>& results, const std::vector<int>& steps) {
  Json per_step = Json::array();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    double sum_exp = 0, sum_round = 0, sum_p = 0;
    std::size_t with_p = 0, ground = 0, zero_overlap = 0;
    for (const auto& a : results) {
      const auto& m = a.steps[k].metrics;
      sum_exp += m.ratio_expected;
      sum_round += m.ratio_rounded;
      if (m.p_ground) {
        ++with_p;
        sum_p += *m.p_ground;
        if (*m.p_ground > kGroundThreshold) ++ground;
        if (*m.p_ground < 1e-6) ++zero_overlap;
      }
    }
    const double count = static_cast<double>(std::max<std::size_t>(results.size(), 1));
    Json row{{"step", steps[k]},
             {"mean_ratio_expected", sum_exp / count},
             {"mean_ratio_rounded", sum_round / count},
             {"mean_p_ground", with_p ? Json(sum_p / static_cast<double>(with_p)) : Json(nullptr)},
             {"graphs_with_oracle", with_p},
             {"ground_converged", ground},
             {"zero_overlap", zero_overlap}};
    per_step.push_back(row);
  }
  std::vector<int> reach;
  bool approximate = false;
  std::size_t itd_used = 0;
  for (const auto& a : results) {
    if (a.steps_to_target) reach.push_back(*a.steps_to_target);
    approximate = approximate || !a.reference.exact;
    if (a.itd_pair) ++itd_used;
  }
  Json s{{"graphs", results.size()},
         {"ratios_approximate", approximate},
         {"ground_threshold", kGroundThreshold},
         {"itd_pairs_used", itd_used},
         {"per_step", per_step}};
  if (!reach.empty()) {
    std::sort(reach.begin(), reach.end());
    s["steps_to_93"] = {{"reached", reach.size()},
                        {"mean", std::accumulate(reach.begin(), reach.end(), 0.0) / static_cast<double>(reach.size())},
                        {"median", reach.size() % 2 ? reach[reach.size() / 2]
                                                    : 0.5 * (reach[reach.size() / 2 - 1] + reach[reach.size() / 2])},
                        {"min", reach.front()},
                        {"max", reach.back()}};
  }
  return s;
}

/// 20-bin histogram of values in [0, 1] as a standalone SVG document.
inline std::string histogram_svg(const std::vector<double>& values, const std::string& title,
                                 std::optional<double> reference_line = std::nullopt, int bins = 20) {
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    const int b = std::clamp(static_cast<int>(std::floor(v * bins)), 0, bins - 1);
    ++counts[b];
  }
  const int peak = std::max(1, *std::max_element(counts.begin(), counts.end()));
  const double width = 480, height = 300, left = 50, bottom = 40, top = 30;
  const double plot_w = width - left - 20, plot_h = height - bottom - top;
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  const double bw = plot_w / bins;
  for (int b = 0; b < bins; ++b) {
    const double h = plot_h * counts[b] / peak;
    svg << "<rect x=\"" << left + b * bw << "\" y=\"" << top + plot_h - h << "\" width=\"" << bw - 1
        << "\" height=\"" << h << "\" fill=\"steelblue\"/>\n";
  }
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    svg << "<text x=\"" << left + plot_w * t / 4 << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << t * 0.25 << "</text>\n";
  }
  svg << "<text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << peak
      << "</text>\n";
  if (reference_line) {
    const double x = left + plot_w * *reference_line;
    svg << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + plot_h
        << "\" stroke=\"red\" stroke-dasharray=\"4,3\"/>\n";
    svg << "<text x=\"" << x + 3 << "\" y=\"" << top + 12 << "\" font-size=\"10\" fill=\"red\">"
        << format_double(*reference_line) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qitecut
