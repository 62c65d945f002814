#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orbiteq/structures.hpp"

namespace orbiteq {

using BigInt = boost::multiprecision::cpp_int;

struct AutOptions {
  std::size_t vertex_cap = 300;
  std::uint64_t node_budget = 10'000'000;
};

struct AutomorphismSet {
  std::vector<Permutation> generators;  // never the identity
  BigInt order = 1;                     // exact: product of basic orbit lengths
  std::vector<Vertex> base;             // individualised vertices on the first path
  std::vector<std::size_t> basic_orbit_lengths;
  std::uint64_t nodes = 0;              // search tree nodes visited
};

// Generators of the full automorphism group. Throws CapExceeded above the
// vertex cap and NodeBudgetExceeded when the search tree outgrows the budget.
AutomorphismSet automorphisms(const Structure& s, const AutOptions& opts = {});

bool is_rigid(const Structure& s, const AutOptions& opts = {});

// True iff every element of Aut(s) fixes each u in U, judged by the orbits of
// the generated group rather than by generators alone.
bool fixes_pointwise(const Structure& s, const VertexSet& U, const AutOptions& opts = {});

Partition vertex_orbits(const Structure& s, const AutOptions& opts = {});

// Orbits of <generators> on {0..n-1}.
Partition orbits_of(std::size_t n, const std::vector<Permutation>& generators);

}  // namespace orbiteq
