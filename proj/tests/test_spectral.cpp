#include <gtest/gtest.h>

#include <cmath>

#include "netjack/graphon.hpp"
#include "netjack/spectral.hpp"
#include "netjack/statistic.hpp"
#include "oracles.hpp"

using namespace netjack;

TEST(TopEigenvalues, CompleteGraph) {
  const auto ev = top_eigenvalues(oracle::complete_graph(10), 2);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 9.0, 1e-8);
  EXPECT_NEAR(ev[1], -1.0, 1e-8);
}

TEST(TopEigenvalues, EmptyGraph) {
  const auto ev = top_eigenvalues(graph::from_edges(7, {}), 3);
  for (double v : ev) EXPECT_EQ(v, 0.0);
}

TEST(TopEigenvalues, MatchesDenseOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 20 + 4 * seed;
    const graph g = oracle::random_graph(n, 0.3, seed);
    const auto dense = oracle::dense_eigenvalues(g);
    const auto ev = top_eigenvalues(g, 4);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(ev[k], dense[k], 1e-6) << "n=" << n << " k=" << k;
  }
}

TEST(TopEigenvalues, Gnp60Example) {
  const graph g = oracle::random_graph(60, 0.3, 60);
  const auto dense = oracle::dense_eigenvalues(g);
  const auto ev = top_eigenvalues(g, 2);
  EXPECT_NEAR(ev[0], dense[0], 1e-6);
  EXPECT_NEAR(ev[1], dense[1], 1e-6);
}

TEST(TopEigenvalues, BipartiteSymmetricSpectrum) {
  // K_{3,4}: eigenvalues ±sqrt(12) and zeros; the positive one is reported first.
  std::vector<edge> edges;
  for (node_id a = 0; a < 3; ++a)
    for (node_id b = 3; b < 7; ++b) edges.push_back({a, b});
  const auto ev = top_eigenvalues(graph::from_edges(7, edges), 3);
  EXPECT_NEAR(ev[0], std::sqrt(12.0), 1e-8);
  EXPECT_NEAR(ev[1], -std::sqrt(12.0), 1e-8);
  EXPECT_NEAR(ev[2], 0.0, 1e-8);
}

TEST(TopEigenvalues, DisconnectedGraph) {
  // K4 plus a disjoint K3: top two are 3 and 2.
  const graph g = oracle::from_pairs(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 5}, {5, 6}, {4, 6}});
  const auto ev = top_eigenvalues(g, 2);
  EXPECT_NEAR(ev[0], 3.0, 1e-8);
  EXPECT_NEAR(ev[1], 2.0, 1e-8);
}

TEST(TopEigenvalues, AllEigenvaluesOfSmallGraph) {
  const graph g = oracle::random_graph(12, 0.4, 77);
  const auto dense = oracle::dense_eigenvalues(g);
  const auto ev = top_eigenvalues(g, 12);
  for (std::size_t k = 0; k < 12; ++k) EXPECT_NEAR(std::abs(ev[k]), std::abs(dense[k]), 1e-6);
}

TEST(TopEigenvalues, RepeatedPlusMinusPairsPutPositiveFirst) {
  // Three disjoint edges: spectrum {1, 1, 1, -1, -1, -1}.
  const graph edges = oracle::from_pairs(6, {{0, 1}, {2, 3}, {4, 5}});
  EXPECT_EQ(top_eigenvalues(edges, 3).size(), 3u);
  for (double v : top_eigenvalues(edges, 3)) EXPECT_NEAR(v, 1.0, 1e-8);
  // Two disjoint 2-stars and an isolated node: {√2, √2, 0, 0, 0, -√2, -√2} by magnitude.
  const graph stars = oracle::from_pairs(7, {{0, 1}, {0, 2}, {3, 4}, {3, 5}});
  const auto ev = top_eigenvalues(stars, 3);
  EXPECT_NEAR(ev[0], std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(ev[1], std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(ev[2], -std::sqrt(2.0), 1e-8);
}

TEST(TopEigenvalues, SparseGraphsWithTiesMatchDenseOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 6 + seed % 30;
    const graph g = oracle::random_graph(n, seed % 2 == 0 ? 0.05 : 0.1, seed);
    const auto dense = oracle::dense_eigenvalues(g);
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto ev = top_eigenvalues(g, k);
      for (std::size_t j = 0; j < k; ++j) EXPECT_NEAR(ev[j], dense[j], 1e-6) << "seed=" << seed << " k=" << k;
    }
  }
}

TEST(TopEigenvalues, RejectsBadArguments) {
  const graph g = oracle::complete_graph(4);
  EXPECT_THROW(top_eigenvalues(g, 0), argument_error);
  EXPECT_THROW(top_eigenvalues(g, 5), argument_error);
  eigen_options bad;
  bad.tol = 0.0;
  EXPECT_THROW(top_eigenvalues(g, 1, bad), argument_error);
}

TEST(TopEigenvalues, NonConvergenceIsNumericalError) {
  eigen_options tight;
  tight.tol = 1e-300;
  tight.max_iter = 2;
  try {
    top_eigenvalues(oracle::random_graph(60, 0.3, 1), 2, tight);
    FAIL() << "expected numerical_error";
  } catch (const numerical_error& e) {
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(EigenStatistic, LeaveOneOutInterlacing) {
  const graph g = sample_graph(sbm3_model(), 60, 3).g;
  const auto loo = loo_vector(g, statistic::eigenvalue(1), 1.0);
  for (double v : loo.values) EXPECT_LE(v, loo.full_value + 1e-8);
}

TEST(EigenStatistic, LeaveOneOutMatchesDenseOracle) {
  const graph g = oracle::random_graph(30, 0.3, 5);
  const auto loo = loo_vector(g, statistic::eigenvalue(2), 1.0);
  for (node_id i = 0; i < 30; ++i) {
    const auto dense = oracle::dense_eigenvalues(induced_subgraph(g, leave_one_out(g, i)));
    EXPECT_NEAR(loo.values[i], dense[1], 1e-6);
  }
}
