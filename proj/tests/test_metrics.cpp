#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "qitecut/experiment.hpp"
#include "qitecut/generate.hpp"
#include "qitecut/metrics.hpp"

using namespace qitecut;
using std::numbers::pi;

namespace {

Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_pairs(n, e);
}

double basis_probability(const ProductState& st, std::uint64_t z) {
  double p = 1.0;
  for (std::size_t j = 0; j < st.size(); ++j) p *= (z >> j & 1) ? std::pow(std::sin(st.phi[j]), 2) : std::pow(std::cos(st.phi[j]), 2);
  return p;
}

ProductState random_state(Rng& rng, int n) {
  ProductState st;
  for (int j = 0; j < n; ++j) st.phi.push_back(uniform_in(rng, -pi, pi));
  return st;
}

}  // namespace

TEST(PGround, AllPlusOnCycle) {
  const auto g = cycle(6);
  const auto oracle = brute_force_maxcut(g);
  const ProductState plus{std::vector<double>(6, pi / 4)};
  EXPECT_NEAR(p_ground(plus, g, oracle), 1.0 / 32, 1e-15);
  EXPECT_THROW(p_ground(plus, std::span<const std::uint64_t>{}), std::invalid_argument);
}

TEST(PGround, MatchesEnumerationAndTruncatedPath) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = erdos_renyi(9, 0.4, rng());
    const auto oracle = brute_force_maxcut(g);
    const auto st = random_state(rng, 9);
    double expect = 0.0;
    for (std::uint64_t z = 0; z < 512; ++z) {
      Assignment side(9);
      for (int j = 0; j < 9; ++j) side[j] = z >> j & 1;
      if (cut_value(g, side) == oracle.c_max) expect += basis_probability(st, z);
    }
    EXPECT_NEAR(p_ground(st, g, oracle), expect, 1e-13);
    EXPECT_NEAR(p_ground_exhaustive(st, g, oracle.c_max), expect, 1e-13);
  }
}

TEST(PGround, FlipAndRelabelInvariance) {
  Rng rng(2);
  const Graph g = erdos_renyi(8, 0.5, 7);
  const auto oracle = brute_force_maxcut(g);
  const auto st = random_state(rng, 8);
  auto flipped = st;
  for (auto& p : flipped.phi) p = pi / 2 - p;
  std::vector<std::uint64_t> flipped_ground;
  for (auto z : oracle.ground_states) flipped_ground.push_back(z ^ 0xff);
  EXPECT_NEAR(p_ground(flipped, flipped_ground), p_ground(st, oracle.ground_states), 1e-14);
  auto reversed = oracle.ground_states;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_NEAR(p_ground(st, reversed), p_ground(st, oracle.ground_states), 1e-14);
}

TEST(ProductProbability, SumsToOne) {
  Rng rng(3);
  for (int n = 1; n <= 10; ++n) {
    const auto st = random_state(rng, n);
    double total = 0.0;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) total += basis_probability(st, z);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ExpectedCut, MatchesEnumeration) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 9));
    const Graph g = erdos_renyi(n, 0.5, rng());
    const auto st = random_state(rng, n);
    double expect = 0.0;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
      Assignment side(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) side[j] = z >> j & 1;
      expect += basis_probability(st, z) * cut_value(g, side);
    }
    const double c = expected_cut(st, g);
    EXPECT_NEAR(c, expect, 1e-10);
    EXPECT_GE(c, -1e-12);
    EXPECT_LE(c, static_cast<double>(g.edge_count()) + 1e-12);
  }
}

TEST(Rounding, MostLikelyOutcome) {
  EXPECT_EQ(round_state({{0.0, pi / 2, 0.2, 1.4, pi / 4}}), (Assignment{0, 1, 0, 1, 0}));
  EXPECT_EQ(to_mask({1, 0, 1}), 0b101u);
}

TEST(Sampling, FrequenciesMatchProbabilities) {
  const ProductState st{{0.3, 1.0, pi / 4}};
  const int shots = 200000;
  std::map<std::uint64_t, int> counts;
  for (const auto& z : sample_state(st, shots, 11)) ++counts[to_mask(z)];
  for (std::uint64_t z = 0; z < 8; ++z) {
    const double p = basis_probability(st, z);
    const double se = std::sqrt(p * (1 - p) / shots);
    EXPECT_NEAR(counts[z] / static_cast<double>(shots), p, 5 * se + 1e-12) << "z=" << z;
  }
  EXPECT_EQ(sample_state(st, 10, 1), sample_state(st, 10, 1));
  EXPECT_TRUE(sample_state(st, 0, 1).empty());
}

TEST(Report, EvaluateState) {
  const auto g = cycle(6);
  const auto oracle = brute_force_maxcut(g);
  const ReferenceCut ref{static_cast<double>(oracle.c_max), true};
  ProductState alt;
  for (int j = 0; j < 6; ++j) alt.phi.push_back(j % 2 ? pi / 2 : 0.0);
  const auto m = evaluate_state(alt, g, ref, &oracle, 20, 3);
  EXPECT_DOUBLE_EQ(m.expected_cut, 6.0);
  EXPECT_DOUBLE_EQ(m.rounded_cut, 6.0);
  EXPECT_DOUBLE_EQ(m.best_sampled_cut, 6.0);
  EXPECT_DOUBLE_EQ(m.ratio_rounded, 1.0);
  ASSERT_TRUE(m.p_ground);
  EXPECT_NEAR(*m.p_ground, 1.0, 1e-15);

  const auto none = evaluate_state(alt, g, ref, nullptr);
  EXPECT_FALSE(none.p_ground);
  EXPECT_EQ(ratio(3.0, {0.0, true}), 1.0);
}

TEST(Report, StepsToRatio) {
  const auto g = cycle(8);
  const auto r = run(g, {});
  const ReferenceCut ref{8.0, true};
  const auto s = steps_to_ratio(r, g, ref);
  ASSERT_TRUE(s);
  EXPECT_GE(expected_cut(r.state_at(*s), g) / 8.0, kTargetRatio);
  if (*s > 1) {
    EXPECT_LT(expected_cut(r.state_at(*s - 1), g) / 8.0, kTargetRatio);
  }
  EXPECT_FALSE(steps_to_ratio(r, g, ReferenceCut{1000.0, false}));
}

TEST(Analysis, ExactReferenceWhenSmall) {
  AnalysisOptions opt;
  opt.itd.mode = ItdOptions::Mode::exhaustive;
  const auto g = parse_graph6("E?~o");
  const auto a = analyze_graph(g, "E?~o", opt);
  ASSERT_TRUE(a.oracle);
  EXPECT_TRUE(a.reference.exact);
  EXPECT_EQ(a.reference.value, a.oracle->c_max);
  ASSERT_EQ(a.steps.size(), 3u);
  for (const auto& sm : a.steps) EXPECT_TRUE(sm.metrics.p_ground);
}

TEST(Analysis, BestKnownReferenceWhenLarge) {
  AnalysisOptions opt;
  opt.brute_force_cap = 10;
  opt.greedy_starts = 20;
  const Graph g = random_ensemble(16, 0.3, 0.3, 1, 2, true).graphs.front();
  const auto a = analyze_graph(g, "x", opt);
  EXPECT_FALSE(a.oracle);
  EXPECT_FALSE(a.reference.exact);
  EXPECT_GE(a.reference.value, a.greedy_cut);
  EXPECT_GE(a.reference.value, cut_value(g, round_state(a.chosen.final_state)));
  for (const auto& sm : a.steps) EXPECT_FALSE(sm.metrics.p_ground);
}

TEST(Analysis, ItdOption) {
  EXPECT_EQ(parse_itd_option("off").mode, ItdOptions::Mode::off);
  EXPECT_EQ(parse_itd_option("exhaustive").mode, ItdOptions::Mode::exhaustive);
  const auto r = parse_itd_option("random:25", 4);
  EXPECT_EQ(r.mode, ItdOptions::Mode::random);
  EXPECT_EQ(r.k, 25);
  EXPECT_EQ(to_string(r), "random:25");
  EXPECT_THROW(parse_itd_option("random:"), ParseError);
  EXPECT_THROW(parse_itd_option("random:0"), ParseError);
  EXPECT_THROW(parse_itd_option("random:5x"), ParseError);
  EXPECT_THROW(parse_itd_option("sometimes"), ParseError);
}
