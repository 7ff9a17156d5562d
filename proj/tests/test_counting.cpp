#include <gtest/gtest.h>

#include "netjack/counting.hpp"
#include "netjack/graph.hpp"
#include "netjack/pattern.hpp"
#include "oracles.hpp"

using namespace netjack;

TEST(Pattern, BuiltInShapes) {
  EXPECT_EQ(pattern::edge().vertices(), 2u);
  EXPECT_EQ(pattern::edge().edges(), 1u);
  EXPECT_EQ(pattern::edge().iso_count(), 1u);
  EXPECT_EQ(pattern::two_star().vertices(), 3u);
  EXPECT_EQ(pattern::two_star().edges(), 2u);
  EXPECT_EQ(pattern::two_star().iso_count(), 3u);
  EXPECT_EQ(pattern::triangle().vertices(), 3u);
  EXPECT_EQ(pattern::triangle().edges(), 3u);
  EXPECT_EQ(pattern::triangle().iso_count(), 1u);
}

TEST(Pattern, CycleIsoCount) {
  // (p - 1)! / 2
  EXPECT_EQ(pattern::cycle(3).iso_count(), 1u);
  EXPECT_EQ(pattern::cycle(4).iso_count(), 3u);
  EXPECT_EQ(pattern::cycle(5).iso_count(), 12u);
  EXPECT_EQ(pattern::cycle(6).iso_count(), 60u);
  EXPECT_EQ(pattern::cycle(5).edges(), 5u);
}

TEST(Pattern, PathAndStarIsoCount) {
  // Paths on p vertices: p!/2. Stars with k leaves: k + 1 choices of center.
  EXPECT_EQ(pattern::path(2).iso_count(), 3u);
  EXPECT_EQ(pattern::path(3).iso_count(), 12u);
  EXPECT_EQ(pattern::path(4).iso_count(), 60u);
  EXPECT_EQ(pattern::star(3).iso_count(), 4u);
  EXPECT_EQ(pattern::star(4).iso_count(), 5u);
  for (const auto& r : {pattern::path(3), pattern::star(3), pattern::cycle(4), pattern::cycle(5)}) {
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= r.vertices(); ++i) fact *= i;
    EXPECT_EQ(r.iso_count() * r.automorphisms(), fact) << r.name();
  }
}

TEST(Pattern, Parse) {
  EXPECT_EQ(pattern::parse("edge"), pattern::edge());
  EXPECT_EQ(pattern::parse("twostar"), pattern::two_star());
  EXPECT_EQ(pattern::parse("triangle"), pattern::triangle());
  EXPECT_EQ(pattern::parse("cycle4"), pattern::cycle(4));
  EXPECT_EQ(pattern::parse("path3"), pattern::path(3));
  EXPECT_EQ(pattern::parse("star3"), pattern::star(3));
  EXPECT_EQ(pattern::parse("cycle4").name(), "cycle4");
  EXPECT_THROW(pattern::parse("hexagon"), argument_error);
  EXPECT_THROW(pattern::parse("cycle2"), argument_error);
  EXPECT_THROW(pattern::parse("pathx"), argument_error);
  EXPECT_THROW(pattern::parse("cycle9"), argument_error);
}

TEST(Counting, TrianglesMatchTripleLoop) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const graph g = oracle::random_graph(40, 0.3, seed);
    const auto c = triangle_counts(g);
    EXPECT_EQ(c.total, oracle::triangles(g));
    EXPECT_EQ(triangle_total(g), c.total);
    count_t sum = 0;
    for (count_t v : c.per_node) sum += v;
    EXPECT_EQ(sum, 3 * c.total);
  }
}

TEST(Counting, TrianglesBothClosureStrategiesAgree) {
  // Dense graph uses bitsets, sparse graph uses the marker scan; compare both
  // with a direct per-node recount.
  for (double p : {0.05, 0.6}) {
    const graph g = oracle::random_graph(150, p, 9);
    const auto c = triangle_counts(g);
    for (node_id i = 0; i < g.num_nodes(); i += 7) {
      count_t t = 0;
      const auto row = g.neighbors(i);
      for (std::size_t a = 0; a < row.size(); ++a)
        for (std::size_t b = a + 1; b < row.size(); ++b) t += g.has_edge(row[a], row[b]);
      ASSERT_EQ(c.per_node[i], t);
    }
  }
}

TEST(Counting, TwoStarsMatchTripleLoop) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const graph g = oracle::random_graph(40, 0.3, seed + 100);
    const auto c = two_star_counts(g);
    EXPECT_EQ(c.total, oracle::two_stars(g));
    EXPECT_EQ(two_star_total(g), c.total);
    count_t sum = 0;
    for (count_t v : c.per_node) sum += v;
    EXPECT_EQ(sum, 3 * c.total);
  }
}

TEST(Counting, PerNodeCountsAreLeaveOneOutDifferences) {
  const graph g = oracle::random_graph(25, 0.35, 6);
  const std::vector<pattern> shapes{pattern::edge(),  pattern::two_star(), pattern::triangle(),
                                    pattern::cycle(4), pattern::path(3),   pattern::star(3)};
  for (const auto& r : shapes) {
    for (auto mode : {match_mode::containment, match_mode::induced}) {
      const auto c = pattern_counts(g, r, mode);
      for (node_id i = 0; i < g.num_nodes(); ++i) {
        const graph sub = induced_subgraph(g, leave_one_out(g, i));
        ASSERT_EQ(c.total - c.per_node[i], oracle::labeled_copies(sub, r, mode == match_mode::induced))
            << r.name() << " node " << i;
      }
    }
  }
}

TEST(Counting, PatternsMatchLabeledCopyOracle) {
  const std::vector<pattern> shapes{pattern::edge(),  pattern::two_star(), pattern::triangle(), pattern::cycle(4),
                                    pattern::path(3), pattern::star(3),    pattern::path(4),    pattern::cycle(5)};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const graph g = oracle::random_graph(12, 0.4, seed);
    for (const auto& r : shapes) {
      EXPECT_EQ(pattern_total(g, r, match_mode::containment), oracle::labeled_copies(g, r, false)) << r.name();
      EXPECT_EQ(pattern_total(g, r, match_mode::induced), oracle::labeled_copies(g, r, true)) << r.name();
    }
  }
}

TEST(Counting, ClosedFormsAgreeWithEmbeddingCounter) {
  const graph g = oracle::random_graph(30, 0.3, 12);
  for (const auto& r : {pattern::edge(), pattern::two_star(), pattern::triangle(), pattern::star(3)}) {
    for (auto mode : {match_mode::containment, match_mode::induced}) {
      const auto closed = pattern_counts(g, r, mode);
      const auto brute = embedding_counts(g, r, mode);
      EXPECT_EQ(closed.total, brute.total) << r.name();
      EXPECT_EQ(closed.per_node, brute.per_node) << r.name();
    }
  }
}

TEST(Counting, CompleteGraphCounts) {
  const graph k5 = oracle::complete_graph(5);
  EXPECT_EQ(pattern_total(k5, pattern::cycle(4), match_mode::containment), 5u * 3u);
  EXPECT_EQ(pattern_total(k5, pattern::cycle(4), match_mode::induced), 0u);
  EXPECT_EQ(pattern_total(k5, pattern::triangle(), match_mode::induced), 10u);
  EXPECT_EQ(pattern_total(k5, pattern::two_star(), match_mode::containment), 30u);
}

TEST(Counting, EmptyAndTinyGraphs) {
  const graph empty = graph::from_edges(6, {});
  for (const auto& r : {pattern::edge(), pattern::two_star(), pattern::triangle(), pattern::cycle(4)}) {
    EXPECT_EQ(pattern_total(empty, r, match_mode::containment), 0u);
    EXPECT_EQ(pattern_total(empty, r, match_mode::induced), 0u);
  }
  const graph none = graph::from_edges(0, {});
  EXPECT_EQ(triangle_counts(none).total, 0u);
}
