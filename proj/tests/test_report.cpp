#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qitecut/config.hpp"
#include "qitecut/generate.hpp"
#include "qitecut/report.hpp"

using namespace qitecut;

TEST(Config, DefaultsAndOverrides) {
  const auto cfg = config_from_json(nlohmann::json::parse(R"({
    "max_steps": 5, "tau_max": 2.0, "tau_points": 401, "tau_mode": "cumulative",
    "monotone_guard": false, "itd": {"excised_edges": [0, 3], "ramp": [1.0, 0.75, 0.25]}})"));
  EXPECT_EQ(cfg.max_steps, 5);
  EXPECT_EQ(cfg.tau_grid.max, 2.0);
  EXPECT_EQ(cfg.tau_grid.points, 401);
  EXPECT_EQ(cfg.tau_mode, TauMode::cumulative);
  EXPECT_FALSE(cfg.monotone_guard);
  ASSERT_TRUE(cfg.itd);
  EXPECT_EQ(cfg.itd->excised_edges, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(cfg.itd->settle_step(), 4);
  EXPECT_EQ(cfg.variance_tol, 1e-8);
}

TEST(Config, Rejections) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"max_step": 5})")), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"max_steps": "five"})")), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"max_steps": 0})")), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"([1, 2])")), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"tau_mode": "slow"})")), ParseError);
  EXPECT_THROW(load_config(testing::TempDir() + "missing.json"), ParseError);
  const std::string path = testing::TempDir() + "broken.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_config(path), ParseError);
}

TEST(Json, RunAndOracle) {
  const auto g = parse_graph6("C~");
  const auto r = run(g, {});
  const auto j = to_json(r);
  EXPECT_EQ(j["steps_taken"], r.steps_taken());
  EXPECT_EQ(j["trajectory"].size(), r.trajectory.size());
  EXPECT_EQ(j["trajectory"][0]["a"].size(), 4u);
  const auto o = to_json(brute_force_maxcut(g), 4);
  EXPECT_EQ(o["c_max"], 4);
  EXPECT_EQ(o["ground_states"].size(), 6u);
  EXPECT_EQ(o["ground_states"][0], "1100");  // mask 0b0011, vertex 0 first
  EXPECT_EQ(bitstring(0b0110, 4), "0110");
}

TEST(Csv, RowsAndQuoting) {
  AnalysisOptions opt;
  const auto g = parse_graph6("E?~o");
  const auto a = analyze_graph(g, "E?~o", opt);
  std::ostringstream out;
  write_csv_rows(out, a, g);
  std::string line;
  std::istringstream in(out.str());
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 10) << line;
    EXPECT_EQ(line.rfind("E?~o,6,", 0), 0u);
  }
  EXPECT_EQ(rows, 3);
  const std::string header = kCsvHeader;
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 10);
  EXPECT_EQ(csv_quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_quote("x\"y"), "\"x\"\"y\"");
  EXPECT_EQ(csv_quote("plain"), "plain");
}

TEST(Summary, Means) {
  AnalysisOptions opt;
  const auto ens = enumerate_connected(4);
  std::vector<GraphAnalysis> res;
  for (std::size_t i = 0; i < ens.graphs.size(); ++i) res.push_back(analyze_graph(ens.graphs[i], ens.ids[i], opt));
  const auto s = sweep_summary(res, opt.steps);
  EXPECT_EQ(s["graphs"], 6);
  EXPECT_FALSE(s["ratios_approximate"].get<bool>());
  ASSERT_EQ(s["per_step"].size(), 3u);
  double mean = 0;
  for (const auto& a : res) mean += a.steps[0].metrics.ratio_expected;
  EXPECT_NEAR(s["per_step"][0]["mean_ratio_expected"].get<double>(), mean / 6, 1e-15);
}

TEST(Svg, Histogram) {
  const auto svg = histogram_svg({0.0, 0.5, 0.51, 1.0}, "ratio", kGoemansWilliamsonRatio);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("stroke=\"red\""), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n') > 20, true);
  const auto plain = histogram_svg({}, "empty");
  EXPECT_EQ(plain.find("stroke=\"red\""), std::string::npos);
}
