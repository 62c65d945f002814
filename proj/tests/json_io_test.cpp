#include <gtest/gtest.h>

#include "orbiteq/json_io.hpp"
#include "test_support.hpp"

using namespace orbiteq;
using orbiteq::testkit::Rng;

TEST(JsonIo, BigIntEncoding) {
  EXPECT_TRUE(encode(BigInt(42)).is_number_unsigned());
  const BigInt big = BigInt(1) << 100;
  const Json j = encode(big);
  ASSERT_TRUE(j.is_string());
  EXPECT_EQ(j.get<std::string>(), "1267650600228229401496703205376");
  EXPECT_EQ(decode_bigint(j), big);
  EXPECT_EQ(decode_bigint(Json(7)), 7);
  EXPECT_THROW(decode_bigint(Json("12x")), std::invalid_argument);
  EXPECT_THROW(decode_bigint(Json(-1)), std::invalid_argument);
}

TEST(JsonIo, StructureRoundTrip) {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const auto s = testkit::random_structure(testkit::pick(rng, 0, 9), rng);
    const Json j = encode(s);
    EXPECT_EQ(decode_structure(j), s);
    EXPECT_EQ(canonical(encode(decode_structure(Json::parse(canonical(j))))), canonical(j));
  }
}

TEST(JsonIo, MalformedStructuresAreRejected) {
  EXPECT_THROW(decode_structure(Json::parse(R"({"kind":"hypergraph","n":2})")), std::invalid_argument);
  EXPECT_THROW(decode_structure(Json::parse(R"({"kind":"graph","n":2,"edges":[[0,2]]})")), std::invalid_argument);
  EXPECT_THROW(decode_structure(Json::parse(R"({"kind":"graph","n":2,"edges":[[1,1]]})")), std::invalid_argument);
  EXPECT_THROW(decode_structure(Json::parse(R"({"kind":"tournament","n":3,"arcs":[[0,1]]})")), std::invalid_argument);
  EXPECT_THROW(decode_structure(Json::parse(R"({"kind":"graph"})")), std::invalid_argument);
  EXPECT_THROW(decode_structure(Json::parse(R"([1,2])")), std::invalid_argument);
}

TEST(JsonIo, OracleRoundTrip) {
  const std::vector<OracleSpec> specs{OracleSpec::rado(), OracleSpec::generic_tournament(17), OracleSpec::layered_rado(),
                                      OracleSpec::bit_tournament(), OracleSpec::finite(Graph::from_edges(3, {{0, 1}}))};
  for (const auto& o : specs) EXPECT_EQ(encode(decode_oracle(encode(o))), encode(o));
  EXPECT_THROW(decode_oracle(Json::parse(R"({"kind":"finite"})")), std::invalid_argument);
}

TEST(JsonIo, PartitionRoundTrip) {
  const auto p = Partition::normalized({{3, 1}, {0}, {2, 4}});
  EXPECT_EQ(decode_partition(encode(p)), p);
  EXPECT_THROW(decode_partition(Json::parse(R"({"blocks":[[0,1],[1]]})")), std::invalid_argument);
}

TEST(JsonIo, ProblemAndFamilyRoundTrip) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto p = testkit::random_problem(rng);
    const auto back = decode_problem(encode(p));
    EXPECT_EQ(back.ambient, p.ambient);
    EXPECT_EQ(back.A, p.A);
    EXPECT_EQ(back.Q, p.Q);
    EXPECT_EQ(back.n, p.n);
  }
  IndiscernibleFamily f;
  f.P = {{1, 2}, {3, 4}};
  f.color_class_size = 4;
  const auto g = decode_family(encode(f));
  EXPECT_EQ(g.P, f.P);
}

TEST(JsonIo, OrbitFamilyRoundTrip) {
  const auto g = PermutationGroup::parse("(0 1 2 3)", 4);
  for (auto on : {OrbitDomain::points, OrbitDomain::tuples, OrbitDomain::subsets, OrbitDomain::powerset}) {
    const auto f = orbits(g, on, 2);
    const auto back = decode_orbit_family(encode(f));
    EXPECT_EQ(back.on, f.on);
    EXPECT_EQ(back.orbits, f.orbits);
  }
}

TEST(JsonIo, CanonicalIsStable) {
  const Json j = Json::parse(R"({"b":1,"a":[1,2,{"d":null,"c":"x"}]})");
  EXPECT_EQ(canonical(j), canonical(Json::parse(canonical(j))));
  EXPECT_EQ(canonical(j).substr(0, 8), "{\n  \"a\":");
  EXPECT_EQ(canonical(j).back(), '\n');
}

TEST(JsonIo, SizeBoundsKeys) {
  const Json j = encode(size_bounds(2));
  EXPECT_EQ(j.at("graphBound"), 11);
  EXPECT_EQ(j.at("tournamentSum"), 14);
  EXPECT_EQ(j.at("tournamentClosedForm"), 16);
  EXPECT_EQ(j.at("discrepancy"), true);
}
