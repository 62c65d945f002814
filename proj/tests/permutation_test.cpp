#include <gtest/gtest.h>

#include "orbiteq/permutation.hpp"

using namespace orbiteq;

TEST(Permutation, ParsesCyclesWithFixedPoints) {
  EXPECT_EQ(parse_cycles("(0 1 2)(3 4)", 6), (Permutation{1, 2, 0, 4, 3, 5}));
  EXPECT_EQ(parse_cycles("(0,2)", 3), (Permutation{2, 1, 0}));
  EXPECT_EQ(parse_cycles("", 3), identity_permutation(3));
  EXPECT_EQ(parse_cycles("()", 2), identity_permutation(2));
}

TEST(Permutation, RejectsMalformedCycles) {
  EXPECT_THROW(parse_cycles("(0 1", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(0 3)", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(0 1)(1 2)", 3), std::invalid_argument);
  EXPECT_THROW(parse_cycles("(0 x)", 3), std::invalid_argument);
}

TEST(Permutation, ComposeAppliesLeftFirst) {
  const auto a = parse_cycles("(0 1)", 3), b = parse_cycles("(1 2)", 3);
  // 0 -a-> 1 -b-> 2
  EXPECT_EQ(compose(a, b)[0], 2u);
  EXPECT_EQ(compose(b, a)[0], 1u);
  EXPECT_TRUE(is_identity(compose(a, inverse(a))));
}

TEST(Permutation, CycleStringRoundTrip) {
  for (const char* text : {"(0 3 1)(2 4)", "(1 2)", "()"}) {
    const auto p = parse_cycles(text, 5);
    EXPECT_EQ(parse_cycles(to_cycle_string(p), 5), p) << text;
  }
  EXPECT_EQ(to_cycle_string(identity_permutation(4)), "()");
}

TEST(Permutation, GeneratorListAndBijectionCheck) {
  const auto gens = parse_generators("(0 1 2);(0 1)", 3);
  ASSERT_EQ(gens.size(), 2u);
  EXPECT_TRUE(is_bijection(gens[0]));
  EXPECT_FALSE(is_bijection(Permutation{0, 0, 1}));
  EXPECT_FALSE(is_bijection(Permutation{0, 3, 1}));
}
