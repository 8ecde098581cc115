// qitecut: command-line front end.
//
//   qitecut run        --g6 STR | --er n,p,seed | --graphs FILE [--index i]
//   qitecut sweep      --enumerate n | --graphs FILE | --random n,pmin,pmax,count,seed  --out DIR
//   qitecut oracle     <graph>
//   qitecut greedy     <graph> [--starts K]
//   qitecut enumerate  --n N [--out FILE]
//   qitecut itd-search <graph> [--itd exhaustive|random:K] [--success rounded|overlap|energy]
//
// Exit codes: 0 ok, 1 runtime failure, 2 bad input, 3 size cap exceeded.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qitecut/config.hpp"
#include "qitecut/qitecut.hpp"
#include "qitecut/report.hpp"

using namespace qitecut;
namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct GraphSource {
  std::string g6;
  std::string er;  // n,p,seed
  std::string file;
  int index = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--g6", g6, "graph6 record");
    cmd->add_option("--er", er, "Erdos-Renyi graph n,p,seed");
    cmd->add_option("--graphs", file, "graph6 file (one record per line)");
    cmd->add_option("--index", index, "record index within --graphs")->capture_default_str();
  }
};

struct QiteFlags {
  std::string config_file;
  std::optional<int> max_steps;
  std::optional<double> tau_max;
  std::optional<int> tau_points;
  std::optional<std::string> tau_mode;
  std::optional<double> fixed_tau;
  std::string itd = "off";
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  int shots = 0;

  void add_to(CLI::App* cmd, bool steps_flag = true) {
    cmd->add_option("--config", config_file, "JSON config file");
    if (steps_flag) cmd->add_option("--steps", max_steps, "maximum number of QITE steps");
    cmd->add_option("--tau-max", tau_max, "upper end of the tau search grid");
    cmd->add_option("--tau-points", tau_points, "points in the tau search grid");
    cmd->add_option("--tau-mode", tau_mode, "rederived | cumulative | sequential | fixed");
    cmd->add_option("--fixed-tau", fixed_tau, "tau for --tau-mode fixed");
    cmd->add_option("--itd", itd, "off | exhaustive | random:K")->capture_default_str();
    cmd->add_option("--seed", seed, "seed for pair selection, greedy and sampling")->capture_default_str();
    cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    cmd->add_option("--shots", shots, "measurement samples per reported state")->capture_default_str();
  }

  QiteConfig config() const {
    QiteConfig cfg = config_file.empty() ? QiteConfig{} : load_config(config_file);
    if (max_steps) cfg.max_steps = *max_steps;
    if (tau_max) cfg.tau_grid.max = *tau_max;
    if (tau_points) cfg.tau_grid.points = *tau_points;
    if (tau_mode) cfg.tau_mode = parse_tau_mode(*tau_mode);
    if (fixed_tau) cfg.fixed_tau = *fixed_tau;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
    return cfg;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, sep);) out.push_back(tok);
  return out;
}

template <typename T>
T parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    T v;
    if constexpr (std::is_same_v<T, double>) {
      v = std::stod(s, &used);
    } else {
      const long long x = std::stoll(s, &used);
      if (x < 0 && std::is_unsigned_v<T>) throw std::invalid_argument("negative");
      v = static_cast<T>(x);
    }
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + what + ": '" + s + "'");
  }
}

struct NamedGraph {
  std::string id;
  Graph graph;
};

NamedGraph load_single(const GraphSource& src) {
  const int given = !src.g6.empty() + !src.er.empty() + !src.file.empty();
  if (given != 1) throw ParseError("give exactly one of --g6, --er, --graphs");
  if (!src.g6.empty()) return {src.g6, parse_graph6(src.g6)};
  if (!src.er.empty()) {
    const auto parts = split(src.er, ',');
    if (parts.size() != 3) throw ParseError("--er expects n,p,seed");
    const int n = parse_number<int>(parts[0], "vertex count");
    const double p = parse_number<double>(parts[1], "edge probability");
    const auto seed = parse_number<std::uint64_t>(parts[2], "seed");
    if (n < 1 || n > kGraph6MaxVertices) throw ParseError("--er: n must lie in [1, 62]");
    if (!(p >= 0.0 && p <= 1.0)) throw ParseError("--er: p must lie in [0, 1]");
    return {er_id(n, detail::short_double(p), seed, 0), erdos_renyi(n, p, seed)};
  }
  const auto ens = load_ensemble(src.file);
  if (src.index < 0 || static_cast<std::size_t>(src.index) >= ens.graphs.size())
    throw ParseError("--index " + std::to_string(src.index) + " outside " + src.file + " (" +
                     std::to_string(ens.graphs.size()) + " records)");
  return {ens.ids[src.index], ens.graphs[src.index]};
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

SuccessPredicate predicate_for(const std::string& name, const std::optional<CutOracleResult>& oracle) {
  if (name == "energy") return {};
  if (name != "rounded" && name != "overlap") throw ParseError("--success must be rounded, overlap or energy");
  if (!oracle) return {};  // no exact optimum: fall back to lowest energy
  return name == "rounded" ? rounded_attains(oracle->c_max) : ground_overlap_above(*oracle);
}

// ---- subcommands ------------------------------------------------------------

int cmd_run(const GraphSource& src, const QiteFlags& flags) {
  const auto ng = load_single(src);
  const auto cfg = flags.config();
  AnalysisOptions opt;
  opt.qite = cfg;
  opt.itd = parse_itd_option(flags.itd, flags.seed);
  opt.steps = {cfg.max_steps};
  opt.shots = flags.shots;
  opt.seed = flags.seed;
  const auto a = analyze_graph(ng.graph, ng.id, opt);
  const auto& m = a.steps.back().metrics;
  Json out{{"graph_id", a.id},
           {"graph", to_json(ng.graph)},
           {"config", to_json(cfg)},
           {"itd", to_string(opt.itd)},
           {"seed", flags.seed},
           {"itd_pair", pair_json(a.itd_pair, ng.graph)},
           {"run", to_json(a.chosen)},
           {"metrics", to_json(m)}};
  if (a.oracle) out["oracle"] = to_json(*a.oracle, ng.graph.vertex_count());
  if (!a.reference.exact) out["note"] = "ratios are against the best known cut, not an exact optimum";
  print_json(out);
  return 0;
}

int cmd_oracle(const GraphSource& src, int jobs) {
  const auto ng = load_single(src);
  const auto r = brute_force_maxcut(ng.graph, kBruteForceCap, jobs);
  Json out{{"graph_id", ng.id}, {"n", ng.graph.vertex_count()}, {"num_edges", ng.graph.edge_count()}};
  out.update(to_json(r, ng.graph.vertex_count()));
  print_json(out);
  return 0;
}

int cmd_greedy(const GraphSource& src, int starts, std::uint64_t seed) {
  if (starts < 1) throw ParseError("--starts must be >= 1");
  const auto ng = load_single(src);
  const auto r = multi_start_greedy(ng.graph, starts, seed);
  std::string sides;
  for (auto s : r.assignment) sides.push_back(s ? '1' : '0');
  print_json({{"graph_id", ng.id},
              {"n", ng.graph.vertex_count()},
              {"num_edges", ng.graph.edge_count()},
              {"starts", starts},
              {"seed", seed},
              {"cut", r.cut},
              {"assignment", sides}});
  return 0;
}

int cmd_enumerate(int n, const std::string& out_path) {
  const auto ens = enumerate_connected(n);
  if (out_path.empty()) {
    for (const auto& id : ens.ids) std::cout << id << '\n';
  } else {
    write_graph6_file(out_path, ens.graphs);
    std::cerr << ens.graphs.size() << " graphs written to " << out_path << '\n';
  }
  return 0;
}

int cmd_itd_search(const GraphSource& src, const QiteFlags& flags, const std::string& success_name) {
  const auto ng = load_single(src);
  const auto cfg = flags.config();
  const auto itd = parse_itd_option(flags.itd == "off" ? "exhaustive" : flags.itd, flags.seed);
  const auto mode =
      itd.mode == ItdOptions::Mode::random ? PairSearchMode::random(itd.k, itd.seed) : PairSearchMode::exhaustive();
  std::optional<CutOracleResult> oracle;
  if (ng.graph.vertex_count() <= kBruteForceCap) oracle = brute_force_maxcut(ng.graph, kBruteForceCap, flags.jobs);
  const auto res = itd_pair_search(ng.graph, cfg, mode, predicate_for(success_name, oracle), flags.jobs);

  Json table = Json::array();
  for (const auto& row : res.table) {
    Json r{{"pair", pair_json(row.pair, ng.graph)},
           {"success", row.success},
           {"final_energy", row.final_energy},
           {"rounded_cut", cut_value(ng.graph, round_state(row.final_state))}};
    if (oracle) r["p_ground"] = p_ground(row.final_state, ng.graph, *oracle);
    table.push_back(r);
  }
  Json out{{"graph_id", ng.id},
           {"config", to_json(cfg)},
           {"mode", to_string(itd)},
           {"success_predicate", oracle ? success_name : std::string("energy")},
           {"success", res.success},
           {"best_pair", pair_json(res.best_pair, ng.graph)},
           {"successful_pairs", res.success_count()},
           {"pairs_tried", res.table.size() - 1},
           {"best", to_json(res.best)},
           {"table", table}};
  if (oracle) out["c_max"] = oracle->c_max;
  print_json(out);
  return 0;
}

struct SweepFlags {
  std::optional<int> enumerate_n;
  std::string random_spec;  // n,pmin,pmax,count,seed
  bool allow_disconnected = false;
  std::string steps = "1,4,10";
  std::optional<int> max_steps;
  std::string out_dir;
  int greedy_starts = 200;
  bool reference_line = true;
};

GraphEnsemble sweep_ensemble(const SweepFlags& sf, const GraphSource& src) {
  const int given =
      sf.enumerate_n.has_value() + !sf.random_spec.empty() + !src.file.empty() + !src.g6.empty() + !src.er.empty();
  if (given != 1) throw ParseError("give exactly one of --enumerate, --random, --graphs, --g6, --er");
  if (src.index != 0) throw ParseError("--index is not used by sweep");
  if (sf.enumerate_n) {
    if (*sf.enumerate_n < 1) throw ParseError("--enumerate needs n >= 1");
    return enumerate_connected(*sf.enumerate_n);
  }
  if (!src.file.empty()) return load_ensemble(src.file);
  if (!src.g6.empty() || !src.er.empty()) {
    auto ng = load_single(src);
    GraphEnsemble e;
    e.graphs.push_back(std::move(ng.graph));
    e.ids.push_back(ng.id);
    e.provenance = FileSource{"<command line>"};
    return e;
  }
  const auto parts = split(sf.random_spec, ',');
  if (parts.size() != 5) throw ParseError("--random expects n,pmin,pmax,count,seed");
  const int n = parse_number<int>(parts[0], "vertex count");
  const double lo = parse_number<double>(parts[1], "pmin");
  const double hi = parse_number<double>(parts[2], "pmax");
  const int count = parse_number<int>(parts[3], "count");
  const auto seed = parse_number<std::uint64_t>(parts[4], "seed");
  if (n < 1 || n > kGraph6MaxVertices) throw ParseError("--random: n must lie in [1, 62]");
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) throw ParseError("--random: need 0 <= pmin <= pmax <= 1");
  if (count < 0) throw ParseError("--random: count must be >= 0");
  if (count == 0) return {};
  return random_ensemble(n, lo, hi, count, seed, !sf.allow_disconnected);
}

Json provenance_json(const Provenance& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EnumeratedSource>) {
          return {{"kind", "enumerated"}, {"n", v.n}};
        } else if constexpr (std::is_same_v<T, ErdosRenyiSource>) {
          return {{"kind", "erdos_renyi"}, {"n", v.n},       {"p_min", v.p_min},
                  {"p_max", v.p_max},      {"seed", v.seed}, {"connected", v.connected}};
        } else {
          return {{"kind", "file"}, {"path", v.path}};
        }
      },
      p);
}

int cmd_sweep(const GraphSource& src, const QiteFlags& flags, const SweepFlags& sf) {
  std::vector<int> steps;
  for (const auto& tok : split(sf.steps, ',')) steps.push_back(parse_number<int>(tok, "step"));
  if (steps.empty() || !std::is_sorted(steps.begin(), steps.end()) || steps.front() < 1 ||
      std::adjacent_find(steps.begin(), steps.end()) != steps.end())
    throw ParseError("--steps must be a strictly increasing list of positive integers");
  if (sf.out_dir.empty()) throw ParseError("sweep needs --out DIR");

  QiteConfig cfg = flags.config();
  cfg.max_steps = sf.max_steps.value_or(std::max(cfg.max_steps, steps.back()));
  if (cfg.max_steps < steps.back()) throw ParseError("--max-steps is below the largest reported step");
  const auto ens = sweep_ensemble(sf, src);
  if (ens.graphs.empty()) throw ParseError("empty ensemble");

  AnalysisOptions opt;
  opt.qite = cfg;
  opt.itd = parse_itd_option(flags.itd, flags.seed);
  opt.steps = steps;
  opt.greedy_starts = sf.greedy_starts;
  opt.shots = flags.shots;
  opt.seed = flags.seed;

  std::vector<std::optional<GraphAnalysis>> results(ens.graphs.size());
  std::vector<std::string> errors(ens.graphs.size());
  parallel_for(ens.graphs.size(), flags.jobs, [&](std::size_t i) {
    try {
      AnalysisOptions local = opt;
      local.itd.seed = derive_seed(flags.seed, i);
      local.seed = derive_seed(flags.seed, i);
      results[i] = analyze_graph(ens.graphs[i], ens.ids[i], local);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  fs::create_directories(sf.out_dir);
  const fs::path dir(sf.out_dir);
  std::ofstream csv(dir / "results.csv");
  csv << kCsvHeader << '\n';
  std::vector<GraphAnalysis> ok;
  Json graphs = Json::array(), failures = Json::array();
  for (std::size_t i = 0; i < ens.graphs.size(); ++i) {
    const auto graph_seed = derive_seed(flags.seed, i);
    if (results[i]) {
      write_csv_rows(csv, *results[i], ens.graphs[i]);
      graphs.push_back({{"graph_id", ens.ids[i]}, {"index", i}, {"seed", graph_seed}});
      ok.push_back(std::move(*results[i]));
    } else {
      failures.push_back({{"graph_id", ens.ids[i]}, {"index", i}, {"seed", graph_seed}, {"error", errors[i]}});
    }
  }
  csv.close();

  Json summary = sweep_summary(ok, steps);
  summary["failures"] = failures.size();
  std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';

  Json manifest{{"source", provenance_json(ens.provenance)},
                {"config", to_json(cfg)},
                {"itd", to_string(opt.itd)},
                {"seed", flags.seed},
                {"seed_rule", "per-graph seed = splitmix64 derivation of (seed, index)"},
                {"steps", steps},
                {"brute_force_cap", opt.brute_force_cap},
                {"greedy_starts", opt.greedy_starts},
                {"shots", opt.shots},
                {"graphs", graphs},
                {"failures", failures}};
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';

  for (std::size_t k = 0; k < steps.size(); ++k) {
    std::vector<double> ratios, grounds;
    for (const auto& a : ok) {
      ratios.push_back(a.steps[k].metrics.ratio_expected);
      if (a.steps[k].metrics.p_ground) grounds.push_back(*a.steps[k].metrics.p_ground);
    }
    const auto s = std::to_string(steps[k]);
    std::ofstream(dir / ("ratio_s" + s + ".svg"))
        << histogram_svg(ratios, "C/Cmax after s=" + s,
                         sf.reference_line ? std::optional<double>(kGoemansWilliamsonRatio) : std::nullopt);
    if (!grounds.empty())
      std::ofstream(dir / ("p_ground_s" + s + ".svg")) << histogram_svg(grounds, "P_ground after s=" + s);
  }

  std::cerr << ok.size() << " graphs analysed, " << failures.size() << " failed; results in " << sf.out_dir << '\n';
  return failures.empty() ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MaxCut by linear-Ansatz quantum imaginary time evolution on product states"};
  app.require_subcommand(1);

  GraphSource src;
  QiteFlags flags;
  SweepFlags sf;
  int starts = 200;
  int enum_n = 6;
  std::string enum_out;
  std::string success = "rounded";

  auto* run_cmd = app.add_subcommand("run", "run QITE on one graph and report metrics");
  src.add_to(run_cmd);
  flags.add_to(run_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "analyse an ensemble; writes CSV, JSON and SVG files");
  src.add_to(sweep_cmd);
  flags.add_to(sweep_cmd, false);
  sweep_cmd->add_option("--enumerate", sf.enumerate_n, "all connected graphs on n <= 6 vertices");
  sweep_cmd->add_option("--random", sf.random_spec, "Erdos-Renyi ensemble n,pmin,pmax,count,seed");
  sweep_cmd->add_flag("--allow-disconnected", sf.allow_disconnected, "keep disconnected random draws");
  sweep_cmd->add_option("--steps", sf.steps, "reported steps, e.g. 1,4,10")->capture_default_str();
  sweep_cmd->add_option("--max-steps", sf.max_steps, "step budget (default: largest reported step)");
  sweep_cmd->add_option("--out", sf.out_dir, "output directory");
  sweep_cmd->add_option("--starts", sf.greedy_starts, "greedy starts for best-known cuts")->capture_default_str();
  sweep_cmd->add_flag("!--no-reference-line", sf.reference_line, "omit the 0.878 line from ratio histograms");

  auto* oracle_cmd = app.add_subcommand("oracle", "exact MaxCut by enumeration (n <= 24)");
  src.add_to(oracle_cmd);
  oracle_cmd->add_option("--jobs", flags.jobs, "worker threads");

  auto* greedy_cmd = app.add_subcommand("greedy", "multi-start greedy cut");
  src.add_to(greedy_cmd);
  greedy_cmd->add_option("--starts", starts, "number of random vertex orders")->capture_default_str();
  greedy_cmd->add_option("--seed", flags.seed, "seed")->capture_default_str();

  auto* enum_cmd = app.add_subcommand("enumerate", "list connected graphs on n <= 6 vertices as graph6");
  enum_cmd->add_option("--n", enum_n, "vertex count")->capture_default_str();
  enum_cmd->add_option("--out", enum_out, "write to file instead of stdout");

  auto* itd_cmd = app.add_subcommand("itd-search", "search excised edge pairs for one graph");
  src.add_to(itd_cmd);
  flags.add_to(itd_cmd);
  itd_cmd->add_option("--success", success, "rounded | overlap | energy")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run_cmd) return cmd_run(src, flags);
    if (*sweep_cmd) return cmd_sweep(src, flags, sf);
    if (*oracle_cmd) return cmd_oracle(src, flags.jobs);
    if (*greedy_cmd) return cmd_greedy(src, starts, flags.seed);
    if (*enum_cmd) return cmd_enumerate(enum_n, enum_out);
    if (*itd_cmd) return cmd_itd_search(src, flags, success);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
