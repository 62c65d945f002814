#include <gtest/gtest.h>

#include <queue>

#include "orbiteq/analysis.hpp"
#include "orbiteq/errors.hpp"
#include "test_support.hpp"

using namespace orbiteq;
using orbiteq::testkit::Rng;

namespace {

Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

Tournament transitive_triangle() { return Tournament::from_arcs(3, {{0, 1}, {1, 2}, {0, 2}}); }
Tournament three_cycle() { return Tournament::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}); }

}  // namespace

TEST(Analysis, GraphSeparators) {
  EXPECT_EQ(graph_separators(path(3), 0, 1).separators, (VertexSet{2}));
  EXPECT_TRUE(graph_separators(complete(3), 0, 2).separators.empty());
  EXPECT_TRUE(graph_separators(Graph(3), 1, 2).separators.empty());
  EXPECT_THROW(graph_separators(path(3), 0, 3), std::out_of_range);
}

TEST(Analysis, TournamentSeparators) {
  const auto r = tournament_separators(transitive_triangle(), 0, 2);
  EXPECT_EQ(r.separators, (VertexSet{1}));
  EXPECT_EQ(r.directions, (std::vector<SeparatorDirection>{SeparatorDirection::x_to_y}));
  const auto c = tournament_separators(three_cycle(), 0, 1);
  EXPECT_EQ(c.separators, (VertexSet{2}));
  EXPECT_EQ(c.directions, (std::vector<SeparatorDirection>{SeparatorDirection::y_to_x}));
  EXPECT_TRUE(tournament_separators(Tournament::from_arcs(2, {{1, 0}}), 0, 1).separators.empty());
}

TEST(Analysis, SeparatorPredicateHoldsForEveryListedVertex) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto t = testkit::random_tournament(testkit::pick(rng, 2, 8), rng);
    const Vertex x = 0, y = 1;
    const auto r = tournament_separators(t, x, y);
    for (Vertex z = 2; z < t.n; ++z) {
      const bool listed = std::binary_search(r.separators.begin(), r.separators.end(), z);
      EXPECT_EQ(listed, (t.beats(x, z) && t.beats(z, y)) || (t.beats(y, z) && t.beats(z, x)));
      EXPECT_EQ(listed, separates(t, z, x, y));
    }
  }
}

TEST(Analysis, ApproxClassesExamples) {
  const auto p = approx_classes(path(3), {0, 1, 2});
  EXPECT_EQ(p.partition.blocks, (std::vector<VertexSet>{{0, 2}, {1}}));
  EXPECT_EQ(p.types, (std::vector<ClassType>{ClassType::null, ClassType::null}));
  const auto k = approx_classes(complete(4), {0, 1, 2, 3});
  ASSERT_EQ(k.partition.blocks.size(), 1u);
  EXPECT_EQ(k.types[0], ClassType::complete);
  const auto s = approx_classes(path(3), {1});
  EXPECT_EQ(s.partition.blocks, (std::vector<VertexSet>{{1}}));
  EXPECT_THROW(approx_classes(path(3), {5}), std::out_of_range);
}

TEST(Analysis, ApproxClassesAreCompleteOrNullAndMonotone) {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = testkit::pick(rng, 1, 8);
    const auto g = testkit::random_graph(n, rng);
    VertexSet Y1, Y2;
    for (Vertex v = 0; v < n; ++v) {
      const auto r = testkit::pick(rng, 0, 2);
      if (r >= 1) Y2.push_back(v);
      if (r == 2) Y1.push_back(v);
    }
    const auto c = approx_classes(g, Y2);
    for (auto t : c.types) EXPECT_NE(t, ClassType::mixed);
    for (Vertex x : Y1)
      for (Vertex y : Y1)
        if (approx_related(g, Y2, x, y)) EXPECT_TRUE(approx_related(g, Y1, x, y));
  }
}

TEST(Analysis, MaximalGoodPartitionExamples) {
  EXPECT_EQ(maximal_good_partition(three_cycle()).blocks, (std::vector<VertexSet>{{0}, {1}, {2}}));
  EXPECT_EQ(maximal_good_partition(transitive_triangle()).blocks, (std::vector<VertexSet>{{0, 1, 2}}));
  EXPECT_EQ(maximal_good_partition(Tournament(1)).blocks, (std::vector<VertexSet>{{0}}));
}

TEST(Analysis, MaximalGoodPartitionMatchesSubsetBruteForce) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto t = testkit::random_tournament(testkit::pick(rng, 1, 7), rng);
    const auto brute = testkit::brute_maximal_good_sets(t);
    EXPECT_EQ(maximal_good_partition(t).blocks, brute);
    for (const auto& b : maximal_good_partition(t).blocks) {
      EXPECT_TRUE(is_good(t, b));
      EXPECT_TRUE(is_transitive_subtournament(t, b));
    }
  }
}

TEST(Analysis, NoSeparatorShortcutDisagreesWithMaximalGoodSets) {
  // The transitive triangle is one good block, yet 1 separates 0 and 2.
  const auto t = transitive_triangle();
  EXPECT_TRUE(separates(t, 1, 0, 2));
  EXPECT_EQ(maximal_good_partition(t).block_of(0), maximal_good_partition(t).block_of(2));
}

TEST(Analysis, Equiv0) {
  EXPECT_EQ(equiv0_classes(path(3), 0).partition.blocks, (std::vector<VertexSet>{{0, 2}, {1}}));
  EXPECT_EQ(equiv0_classes(path(5), 10).partition.blocks.size(), 1u);
  EXPECT_EQ(equiv0_classes(Graph(4), 100).partition.blocks.size(), 1u);
  // Path 0-1-2-3 at threshold 2 relates 0~2, 0~3, 1~3 only; closure joins 0 and 1.
  const auto r = equiv0_classes(path(4), 2);
  EXPECT_EQ(r.partition.blocks.size(), 1u);
  EXPECT_TRUE(r.closure_extended);
}

TEST(Analysis, EvenDistanceGraph) {
  EXPECT_EQ(even_distance_graph(path(4)).edges(), (std::vector<VertexPair>{{0, 2}, {1, 3}}));
  EXPECT_TRUE(even_distance_graph(complete(2)).edges().empty());
  EXPECT_TRUE(even_distance_graph(complete(3)).edges().empty());
  EXPECT_THROW(even_distance_graph(Graph(2)), DomainError);
}

TEST(Analysis, EvenDistanceGraphMatchesFloydWarshall) {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = testkit::pick(rng, 2, 8);
    auto g = testkit::random_graph(n, rng, 0.3);
    for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(testkit::pick(rng, 0, v - 1)), v);  // spanning tree
    const std::size_t inf = 1000;
    std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b) d[a][b] = a == b ? 0 : g.adjacent(a, b) ? 1 : inf;
    for (Vertex k = 0; k < n; ++k)
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
    const auto e = even_distance_graph(g);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) EXPECT_EQ(e.adjacent(a, b), d[a][b] % 2 == 0);
  }
}
