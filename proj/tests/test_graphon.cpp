#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <unordered_set>

#include "netjack/graphon.hpp"
#include "netjack/random.hpp"
#include "netjack/resampling.hpp"
#include "oracles.hpp"

using namespace netjack;

namespace {

double raw_edge_density(const graph& g) {
  const double n = static_cast<double>(g.num_nodes());
  return 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1.0));
}

/// Mean edge density over `seeds` samples must sit within 3 MC standard errors of `expected`.
void expect_mean_density(const graphon_model& model, std::size_t n, int seeds, double expected) {
  std::vector<double> d;
  for (int s = 0; s < seeds; ++s) d.push_back(raw_edge_density(sample_graph(model, n, replicate_seed(99, s)).g));
  const double mc_se = std::sqrt(sample_variance(d) / seeds);
  EXPECT_LE(std::abs(mean(d) - expected), 3.0 * mc_se) << "mean " << mean(d) << " expected " << expected;
}

} // namespace

TEST(Sampler, ZeroRhoGivesEmptyGraph) {
  const auto m = constant_model(1.0, 0.0);
  for (std::size_t n : {1u, 2u, 17u}) EXPECT_EQ(sample_graph(m, n, 3).g.num_edges(), 0u);
}

TEST(Sampler, UnitProbabilityGivesCompleteGraph) {
  const auto s = sample_graph(constant_model(1.0, 1.0), 5, 3);
  EXPECT_EQ(s.g, oracle::complete_graph(5));
  EXPECT_EQ(s.latents.size(), 5u);
  EXPECT_EQ(s.rho, 1.0);
  EXPECT_EQ(s.seed, 3u);
}

TEST(Sampler, ClipsProbabilitiesAboveOne) {
  const auto s = sample_graph(constant_model(5.0, 0.5), 30, 1);
  EXPECT_EQ(s.g.num_edges(), 30u * 29u / 2u);
}

TEST(Sampler, Deterministic) {
  const auto m = sbm3_model();
  const auto a = sample_graph(m, 200, 42);
  const auto b = sample_graph(m, 200, 42);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.latents, b.latents);
  EXPECT_NE(a.g, sample_graph(m, 200, 43).g);
}

TEST(Sampler, LatentsInUnitInterval) {
  const auto s = sample_graph(absdiff_model(-1.0 / 3.0), 300, 2);
  for (double x : s.latents) {
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NEAR(s.rho, std::pow(300.0, -1.0 / 3.0), 1e-15);
}

TEST(Sampler, Sbm3MeanDensity) {
  const std::vector<double> pi{0.3, 0.3, 0.4};
  const std::vector<std::vector<double>> b{{0.4, 0.1, 0.1}, {0.1, 0.5, 0.1}, {0.1, 0.1, 0.7}};
  double expected = 0.0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) expected += pi[x] * pi[y] * b[x][y];
  EXPECT_NEAR(expected, 0.259, 1e-12);
  expect_mean_density(sbm3_model(), 1000, 50, expected);
}

TEST(Sampler, DenseAbsDiffMeanDensity) { expect_mean_density(absdiff_model(0.0), 1000, 50, 1.0 / 3.0); }

TEST(Sampler, SingleBlockIsErdosRenyi) {
  const auto m = sbm_model({{0.3}}, {1.0});
  expect_mean_density(m, 300, 50, 0.3);
}

TEST(Sampler, SbmBlockProportions) {
  const auto m = sbm3_model();
  const auto s = sample_graph(m, 2000, 5);
  std::vector<double> share(3, 0.0);
  for (double x : s.latents) share[m.block_of(x)] += 1.0 / s.latents.size();
  // Binomial sd at n=2000 is about 0.011; 5 sd bounds.
  EXPECT_NEAR(share[0], 0.3, 0.055);
  EXPECT_NEAR(share[1], 0.3, 0.055);
  EXPECT_NEAR(share[2], 0.4, 0.055);
}

TEST(Sampler, EdgeFrequencyPerBlockPairWithinClip) {
  // Pool 20 samples and compare the per-block-pair edge frequency against B.
  const auto m = sbm3_model();
  const std::vector<std::vector<double>> b{{0.4, 0.1, 0.1}, {0.1, 0.5, 0.1}, {0.1, 0.1, 0.7}};
  std::vector<std::vector<double>> hits(3, std::vector<double>(3, 0.0)), pairs = hits;
  for (int r = 0; r < 20; ++r) {
    const auto s = sample_graph(m, 200, replicate_seed(7, r));
    for (node_id i = 0; i < 200; ++i) {
      for (node_id j = i + 1; j < 200; ++j) {
        std::size_t x = m.block_of(s.latents[i]), y = m.block_of(s.latents[j]);
        if (x > y) std::swap(x, y);
        pairs[x][y] += 1;
        hits[x][y] += s.g.has_edge(i, j);
      }
    }
  }
  for (int x = 0; x < 3; ++x) {
    for (int y = x; y < 3; ++y) {
      const double p = b[x][y];
      const double se = std::sqrt(p * (1 - p) / pairs[x][y]);
      EXPECT_LE(hits[x][y] / pairs[x][y], p + 4 * se);
      EXPECT_GE(hits[x][y] / pairs[x][y], p - 4 * se);
    }
  }
}

TEST(Sampler, ExchangeableAgainstShuffledLatents) {
  // Reference sampler: the same kernel with latents drawn by std::mt19937_64
  // and node labels shuffled afterwards. Compare triangle counts by KS.
  const auto m = absdiff_model(-1.0 / 3.0);
  const std::size_t n = 60;
  const double rho = m.rho_at(n);
  std::vector<double> lib, ref;
  for (int r = 0; r < 300; ++r) {
    lib.push_back(static_cast<double>(triangle_total(sample_graph(m, n, replicate_seed(1, r)).g)));

    std::mt19937_64 rng(1000 + r);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xi(n);
    for (auto& x : xi) x = u(rng);
    std::shuffle(xi.begin(), xi.end(), rng);
    std::vector<edge> edges;
    for (node_id i = 0; i < n; ++i)
      for (node_id j = i + 1; j < n; ++j)
        if (u(rng) < std::min(rho * std::abs(xi[i] - xi[j]), 1.0)) edges.push_back({i, j});
    ref.push_back(static_cast<double>(triangle_total(graph::from_edges(n, edges))));
  }
  // Two-sample KS critical value at alpha = 0.001: 1.95 * sqrt(2/300).
  EXPECT_LT(oracle::ks_statistic(lib, ref), 1.95 * std::sqrt(2.0 / 300.0));
}

TEST(Sampler, NodeDegreesAreExchangeable) {
  const auto m = sbm3_model();
  std::vector<double> first, last;
  for (int r = 0; r < 300; ++r) {
    const auto s = sample_graph(m, 80, replicate_seed(5, r));
    first.push_back(static_cast<double>(s.g.degree(0)));
    last.push_back(static_cast<double>(s.g.degree(79)));
  }
  EXPECT_LT(oracle::ks_statistic(first, last), 1.95 * std::sqrt(2.0 / 300.0));
}

TEST(Models, SbmValidation) {
  EXPECT_NO_THROW(sbm3_model());
  EXPECT_THROW(sbm_model({{0.4, 0.1}, {0.2, 0.5}}, {0.5, 0.5}), argument_error);
  EXPECT_THROW(sbm_model({{1.2}}, {1.0}), argument_error);
  EXPECT_THROW(sbm_model({{0.2}}, {0.9}), argument_error);
  EXPECT_THROW(sbm_model({{0.2, 0.1}, {0.1, 0.2}}, {1.2, -0.2}), argument_error);
  EXPECT_THROW(sbm_model({{0.2}}, {0.5, 0.5}), argument_error);
  EXPECT_NO_THROW(sbm_model({{0.2, 0.1}, {0.1, 0.2}}, {0.5, 0.5 + 1e-13}));
}

TEST(Models, AbsDiff) {
  EXPECT_NEAR(absdiff_model(-1.0 / 3.0).rho_at(1000), 0.1, 1e-12);
  EXPECT_EQ(absdiff_model(0.0).rho_at(1000), 1.0);
  EXPECT_THROW(absdiff_model(0.5), argument_error);
  EXPECT_DOUBLE_EQ(absdiff_model(0.0).kernel(0.2, 0.7), 0.5);
}

TEST(Models, BlockOf) {
  const auto m = sbm3_model();
  EXPECT_EQ(m.block_of(0.0), 0u);
  EXPECT_EQ(m.block_of(0.299), 0u);
  EXPECT_EQ(m.block_of(0.3), 1u);
  EXPECT_EQ(m.block_of(0.65), 2u);
  EXPECT_EQ(m.block_of(0.999999), 2u);
  EXPECT_DOUBLE_EQ(m.kernel(0.1, 0.9), 0.1);
  EXPECT_DOUBLE_EQ(m.kernel(0.9, 0.95), 0.7);
}

TEST(Seeds, ReplicateSeedDeterministic) {
  EXPECT_EQ(replicate_seed(123, 7), replicate_seed(123, 7));
  EXPECT_NE(replicate_seed(123, 7), replicate_seed(123, 8));
}

TEST(Seeds, NoCollisionsAcrossIndex) {
  splitmix64 rng(2024);
  for (int t = 0; t < 1000000; ++t) {
    const std::uint64_t s = rng();
    ASSERT_NE(replicate_seed(s, 0), replicate_seed(s, 1));
  }
}

TEST(Seeds, NoCollisionsAcrossMaster) {
  splitmix64 rng(77);
  for (int t = 0; t < 1000000; ++t) {
    const std::uint64_t s = rng();
    const std::uint64_t k = rng() % 100000;
    ASSERT_NE(replicate_seed(s, k), replicate_seed(s + 1, k));
  }
}

TEST(Seeds, DistinctAcrossReplicates) {
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t k = 0; k < 100000; ++k) ASSERT_TRUE(seen.insert(replicate_seed(1, k)).second);
}

TEST(Random, CounterUniformRange) {
  double sum = 0.0;
  for (std::uint64_t c = 0; c < 100000; ++c) {
    const double u = counter_uniform(5, c);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.005);
}

TEST(Random, BelowIsInRange) {
  splitmix64 rng(3);
  std::vector<int> hist(7, 0);
  for (int t = 0; t < 70000; ++t) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++hist[v];
  }
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}
