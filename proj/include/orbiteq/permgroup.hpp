#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbiteq/autgroup.hpp"
#include "orbiteq/permutation.hpp"

namespace orbiteq {

inline constexpr std::size_t kOrbitCap = 1'000'000;

// A degree and a generator list. A deterministic Schreier-Sims chain with
// base 0,1,2,... is built on construction for order and membership.
class PermutationGroup {
 public:
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermutationGroup parse(std::string_view cycles, std::size_t degree);
  static PermutationGroup trivial(std::size_t degree) { return {degree, {}}; }
  static PermutationGroup symmetric(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  BigInt order() const;
  bool contains(const Permutation& p) const;
  bool same_group(const PermutationGroup& other) const;

  // Every element, identity first. Throws CapExceeded above `cap`.
  std::vector<Permutation> elements(std::size_t cap = kOrbitCap) const;

 private:
  struct Level {
    std::vector<Permutation> strong;                      // generators fixing 0..level-1
    std::vector<std::optional<Permutation>> transversal;  // transversal[b] maps level -> b
  };

  void extend(std::size_t level, const Permutation& g);
  std::optional<Permutation> sift(Permutation g, std::size_t from) const;

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Level> chain_;
};

enum class OrbitDomain { points, tuples, subsets, powerset };

std::string orbit_domain_name(OrbitDomain d);
std::optional<OrbitDomain> parse_orbit_domain(const std::string& s);

struct OrbitFamily {
  OrbitDomain on = OrbitDomain::points;
  std::size_t k = 1;
  // Each orbit lists its members in canonical order; orbits ordered by least
  // member. Tuples have distinct entries; subsets are sorted.
  std::vector<std::vector<std::vector<Vertex>>> orbits;
};

// Breadth-first closure under the generators. `k` is ignored for powerset
// (and taken as 1 for points). Throws CapExceeded when the domain exceeds `cap`.
OrbitFamily orbits(const PermutationGroup& g, OrbitDomain on, std::size_t k, std::size_t cap = kOrbitCap);

struct OrbitEquivalence {
  std::size_t kmax = 0;
  std::vector<bool> subsets_equal;  // index k-1
  std::vector<bool> tuples_equal;
  std::optional<std::size_t> subset_divergence;  // least k
  std::optional<std::size_t> tuple_divergence;
};

OrbitEquivalence orbit_equivalent(const PermutationGroup& g, const PermutationGroup& h, std::size_t kmax);

// All permutations preserving every orbit of g on subsets. Degree <= 8.
PermutationGroup orbit_closure(const PermutationGroup& g);

struct RelationGroupResult {
  bool is_relation_group = false;
  std::vector<std::size_t> orbit_indices;  // powerset orbits forming R
  std::vector<std::vector<Vertex>> witness;  // R itself, canonical order
};

// Searches unions of powerset orbits by increasing number of orbits for one
// whose stabiliser is exactly <g>. Degree <= 6.
RelationGroupResult is_relation_group(const PermutationGroup& g, std::uint64_t candidate_cap = std::uint64_t{1} << 26);

// First powerset orbit (by least member, masks ascending) of length |g|. Degree <= 12.
std::optional<std::vector<std::vector<Vertex>>> regular_powerset_orbit(const PermutationGroup& g);

struct TransferCounts {
  std::size_t n = 0;
  std::size_t pairs = 0;
  std::size_t succeeded = 0;
  std::size_t no_h_found = 0;
  std::size_t no_witness = 0;        // pairs that fell back to V = support of u1
  std::size_t witness_violations = 0;  // witness V existed, h mapped V onto V2, yet u1^h != u2
};

struct TransferReport {
  std::vector<TransferCounts> per_n;
  bool all_succeeded() const;
};

// For each n <= nmax and each pair of distinct G-equivalent injective n-tuples,
// looks for the least witness V containing the support U1 whose setwise
// stabiliser in G fixes U1 pointwise, then for h in H with V^h = V^g and
// u1^h = u2. Requires every generator of H to lie in G.
TransferReport orbit_transfer_check(const PermutationGroup& g, const PermutationGroup& h, std::size_t nmax);

}  // namespace orbiteq
