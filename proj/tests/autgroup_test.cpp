#include <gtest/gtest.h>

#include "orbiteq/autgroup.hpp"
#include "orbiteq/errors.hpp"
#include "orbiteq/permgroup.hpp"
#include "test_support.hpp"

using namespace orbiteq;
using orbiteq::testkit::Rng;

namespace {

Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }
Tournament three_cycle() { return Tournament::from_arcs(3, {{0, 1}, {1, 2}, {2, 0}}); }

Tournament transitive(std::size_t n) {
  Tournament t(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) t.orient(a, b);
  return t;
}

}  // namespace

TEST(Autgroup, SmallExamples) {
  EXPECT_EQ(automorphisms(three_cycle()).order, 3);
  EXPECT_EQ(automorphisms(path3()).order, 2);
  EXPECT_EQ(automorphisms(transitive(40)).order, 1);
  EXPECT_EQ(automorphisms(Graph(6)).order, 720);
  EXPECT_TRUE(is_rigid(transitive(5)));
  EXPECT_FALSE(is_rigid(three_cycle()));
  EXPECT_TRUE(is_rigid(Graph(1)));
  EXPECT_TRUE(is_rigid(Graph(0)));
}

TEST(Autgroup, FixesPointwise) {
  EXPECT_TRUE(fixes_pointwise(path3(), {1}));
  EXPECT_FALSE(fixes_pointwise(path3(), {0}));
  EXPECT_TRUE(fixes_pointwise(path3(), {}));
  EXPECT_THROW(fixes_pointwise(path3(), {3}), std::out_of_range);
}

TEST(Autgroup, VertexOrbits) {
  EXPECT_EQ(vertex_orbits(Graph(3)).blocks, (std::vector<VertexSet>{{0, 1, 2}}));
  EXPECT_EQ(vertex_orbits(transitive(3)).blocks, (std::vector<VertexSet>{{0}, {1}, {2}}));
  EXPECT_EQ(vertex_orbits(path3()).blocks, (std::vector<VertexSet>{{0, 2}, {1}}));
}

TEST(Autgroup, GeneratorsAreAutomorphismsAndNeverTheIdentity) {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    const Structure s = testkit::random_structure(testkit::pick(rng, 1, 12), rng);
    for (const auto& g : automorphisms(s).generators) {
      EXPECT_TRUE(is_automorphism(s, g));
      EXPECT_FALSE(is_identity(g));
    }
  }
}

TEST(Autgroup, OrderMatchesPermutationFilter) {
  Rng rng(99);
  for (int kind = 0; kind < 3; ++kind)
    for (int i = 0; i < 150; ++i) {
      const std::size_t n = testkit::pick(rng, 1, 7);
      Structure s = kind == 0   ? Structure(testkit::random_graph(n, rng, 0.3 + 0.4 * (i % 2)))
                    : kind == 1 ? Structure(testkit::random_tournament(n, rng))
                                : Structure(testkit::random_ordered_graph(n, rng));
      EXPECT_EQ(automorphisms(s).order, testkit::brute_aut_order(s)) << "kind " << kind << " instance " << i;
    }
}

TEST(Autgroup, OrderAgreesWithSchreierSimsOnGenerators) {
  Rng rng(4);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = testkit::pick(rng, 2, 10);
    const auto g = testkit::random_graph(n, rng, 0.2);
    const auto aut = automorphisms(g);
    EXPECT_EQ(PermutationGroup(n, aut.generators).order(), aut.order);
  }
}

TEST(Autgroup, FixesPointwiseIsMonotone) {
  Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = testkit::pick(rng, 2, 7);
    const auto g = testkit::random_graph(n, rng, 0.3);
    VertexSet U;
    for (Vertex v = 0; v < n; ++v)
      if (testkit::pick(rng, 0, 1)) U.push_back(v);
    const bool all = fixes_pointwise(g, U);
    EXPECT_EQ(all, testkit::brute_fixes_pointwise(g, U));
    if (all)
      for (std::size_t drop = 0; drop < U.size(); ++drop) {
        VertexSet sub = U;
        sub.erase(sub.begin() + static_cast<long>(drop));
        EXPECT_TRUE(fixes_pointwise(g, sub));
      }
  }
}

TEST(Autgroup, LargeSymmetricInputsStayWithinTheNodeBudget) {
  // Disjoint union of 10 triangles: order 6^10 * 10!.
  Graph g(30);
  for (Vertex b = 0; b < 30; b += 3) {
    g.add_edge(b, b + 1);
    g.add_edge(b + 1, b + 2);
    g.add_edge(b, b + 2);
  }
  BigInt expected = 1;
  for (int i = 0; i < 10; ++i) expected *= 6;
  for (int i = 2; i <= 10; ++i) expected *= i;
  EXPECT_EQ(automorphisms(g).order, expected);
}

TEST(Autgroup, Caps) {
  EXPECT_THROW(automorphisms(Graph(301)), CapExceeded);
  AutOptions tight;
  tight.node_budget = 3;
  EXPECT_THROW(automorphisms(Graph(8), tight), NodeBudgetExceeded);
}
