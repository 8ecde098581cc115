#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qitecut/generate.hpp"
#include "qitecut/oracles.hpp"
#include "qitecut/product_state.hpp"

using namespace qitecut;
using std::numbers::pi;

namespace {

// Exhaustive moments of H over the product distribution P(z) = prod cos^2/sin^2.
struct Moments {
  double mean = 0, second = 0;
};

Moments enumerate_moments(const ProductState& st, const Graph& g, const EdgeWeights& w) {
  Moments m;
  const int n = g.vertex_count();
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
    double p = 1.0;
    for (int j = 0; j < n; ++j) p *= (z >> j & 1) ? std::pow(std::sin(st.phi[j]), 2) : std::pow(std::cos(st.phi[j]), 2);
    double e = 0.0;
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      const auto& ed = g.edge(k);
      e += w.h[k] * (((z >> ed.u) & 1) == ((z >> ed.v) & 1) ? 1.0 : -1.0);
    }
    m.mean += p * e;
    m.second += p * e * e;
  }
  return m;
}

ProductState random_state(Rng& rng, int n) {
  ProductState st;
  for (int j = 0; j < n; ++j) st.phi.push_back(uniform_in(rng, -pi, pi));
  return st;
}

EdgeWeights random_weights(Rng& rng, const Graph& g) {
  EdgeWeights w = EdgeWeights::ones(g);
  for (auto& h : w.h) h = uniform_in(rng, 0.0, 1.0);
  return w;
}

}  // namespace

TEST(InitialState, ZeroOnHighestDegreeVertex) {
  const auto star = Graph::from_pairs(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto st = initial_state(star);
  EXPECT_EQ(st.phi[0], 0.0);
  for (int j = 1; j < 5; ++j) EXPECT_DOUBLE_EQ(st.phi[j], pi / 4);

  const auto path = Graph::from_pairs(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(initial_state(path).phi, (std::vector<double>{pi / 4, 0.0, pi / 4}));
}

TEST(InitialState, OneZeroPerComponent) {
  const auto g = Graph::from_pairs(5, {{0, 1}, {2, 3}, {3, 4}});
  const auto st = initial_state(g);
  EXPECT_EQ(st.phi[0], 0.0);
  EXPECT_DOUBLE_EQ(st.phi[1], pi / 4);
  EXPECT_EQ(st.phi[3], 0.0);
  EXPECT_DOUBLE_EQ(st.phi[2], pi / 4);
}

TEST(Energy, SmallExamples) {
  const auto k2 = Graph::from_pairs(2, {{0, 1}});
  const auto w = EdgeWeights::ones(k2);
  EXPECT_DOUBLE_EQ(energy({{0.0, 0.0}}, k2, w), 1.0);
  EXPECT_NEAR(energy({{0.0, pi / 2}}, k2, w), -1.0, 1e-15);
  EXPECT_NEAR(energy({{pi / 4, pi / 4}}, k2, w), 0.0, 1e-15);
  EXPECT_NEAR(energy_variance({{pi / 4, pi / 4}}, k2, w), 1.0, 1e-15);
  EXPECT_EQ(energy_variance({{0.0, pi / 2}}, k2, w), 0.0);
}

TEST(Energy, MatchesEnumeration) {
  Rng rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 9));
    const Graph g = erdos_renyi(n, uniform_in(rng, 0.2, 1.0), rng());
    const auto w = random_weights(rng, g);
    const auto st = random_state(rng, n);
    const auto m = enumerate_moments(st, g, w);
    EXPECT_NEAR(energy(st, g, w), m.mean, 1e-12);
    EXPECT_NEAR(energy_variance(st, g, w), m.second - m.mean * m.mean, 1e-12);
  }
}

TEST(Energy, FlipSymmetryAndBounds) {
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = erdos_renyi(8, 0.5, rng());
    const auto w = EdgeWeights::ones(g);
    auto st = random_state(rng, 8);
    auto flipped = st;
    for (auto& p : flipped.phi) p = pi / 2 - p;
    const double e = energy(st, g, w);
    EXPECT_NEAR(e, energy(flipped, g, w), 1e-12);
    EXPECT_LE(std::abs(e), static_cast<double>(g.edge_count()) + 1e-12);
    EXPECT_GE(energy_variance(st, g, w), 0.0);
  }
}

TEST(Energy, VarianceVanishesOnBasisStates) {
  const auto g = Graph::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
  const auto w = EdgeWeights::ones(g);
  for (int z = 0; z < 16; ++z) {
    ProductState st;
    for (int j = 0; j < 4; ++j) st.phi.push_back((z >> j & 1) ? pi / 2 : 0.0);
    EXPECT_EQ(energy_variance(st, g, w), 0.0);
    EXPECT_NE(energy_variance(apply_y_rotations(st, std::vector<double>{0.0, 0.0, 0.01, 0.0}), g, w), 0.0);
  }
}

TEST(BVector, InitialState) {
  // |0> on vertex 1 (degree 3); neighbours 0, 2, 3 get -h; vertex 4 is two hops away
  const auto g = Graph(5, {{0, 1, 1.0}, {1, 2, 0.5}, {1, 3, 1.0}, {3, 4, 1.0}});
  EdgeWeights w{{1.0, 0.5, 1.0, 1.0}};
  const auto st = initial_state(g);
  ASSERT_EQ(st.phi[1], 0.0);
  const auto b = b_vector(st, g, w);
  EXPECT_EQ(b[1], 0.0);
  EXPECT_NEAR(b[0], -1.0, 1e-15);
  EXPECT_NEAR(b[2], -0.25, 1e-15);  // h = 0.5 times w = 0.5
  EXPECT_NEAR(b[3], -1.0, 1e-15);
  EXPECT_NEAR(b[4], 0.0, 1e-15);
}

TEST(BVector, AllPlusIsZero) {
  const Graph g = erdos_renyi(7, 0.6, 3);
  const auto b = b_vector({std::vector<double>(7, pi / 4)}, g, EdgeWeights::ones(g));
  for (double x : b) EXPECT_NEAR(x, 0.0, 1e-15);
}

TEST(BVector, HalfEnergyGradient) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = erdos_renyi(7, 0.5, rng());
    const auto w = random_weights(rng, g);
    const auto st = random_state(rng, 7);
    const auto b = b_vector(st, g, w);
    const double h = 1e-6;
    for (int j = 0; j < 7; ++j) {
      auto up = st, down = st;
      up.phi[j] += h;
      down.phi[j] -= h;
      EXPECT_NEAR(b[j], (energy(up, g, w) - energy(down, g, w)) / (2 * h) / 2, 1e-8);
    }
  }
}

TEST(BVector, MatchesDenseCommutator) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 7));
    const Graph g = erdos_renyi(n, 0.6, rng());
    const auto w = random_weights(rng, g);
    const auto st = random_state(rng, n);
    const auto v = dense_state(st);
    const auto b = b_vector(st, g, w);
    for (int j = 0; j < n; ++j) {
      EXPECT_NEAR(b[j], dense_expectation(v, g, CommutatorObs{j, w}), 1e-10);
      EXPECT_NEAR(b[j], dense_expectation(v, g, BOperatorObs{j, w}), 1e-10);
    }
  }
}

TEST(SMatrix, IdentityAndDenseAgreement) {
  EXPECT_EQ(s_matrix({{0.3}}), Eigen::MatrixXd::Identity(1, 1));
  Rng rng(6);
  const auto st = random_state(rng, 3);
  const auto s = s_matrix(st);
  EXPECT_TRUE(s.isApprox(Eigen::MatrixXd::Identity(3, 3)));
  const auto v = dense_state(st);
  const Graph g(3, {});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(s(i, j), dense_expectation(v, g, YYObs{i, j}), 1e-12);
}

TEST(YRotations, Examples) {
  const ProductState st{{0.0, 0.4}};
  EXPECT_EQ(apply_y_rotations(st, std::vector<double>{0.0, 0.0}).phi, st.phi);
  const auto flipped = apply_y_rotations({{0.0}}, std::vector<double>{pi / 2});
  EXPECT_NEAR(std::cos(flipped.phi[0]), 0.0, 1e-15);
  EXPECT_THROW(apply_y_rotations(st, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(YRotations, MatchDenseExponential) {
  // exp(-i theta Y) = cos(theta) I - i sin(theta) Y, applied qubit by qubit
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 8));
    const auto st = random_state(rng, n);
    std::vector<double> theta;
    for (int j = 0; j < n; ++j) theta.push_back(uniform_in(rng, -2.0, 2.0));
    DenseVector v = dense_state(st);
    for (int j = 0; j < n; ++j) {
      const DenseVector y = pauli::apply_y(v, j);
      v = std::cos(theta[j]) * v - std::complex<double>(0, 1) * std::sin(theta[j]) * y;
    }
    const auto expect = dense_state(apply_y_rotations(st, theta));
    EXPECT_GE(std::norm(expect.dot(v)), 1.0 - 1e-10);
  }
}
