#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbiteq/structures.hpp"

namespace orbiteq {

struct IndiscernibilityProblem {
  Structure ambient;
  VertexSet A;
  std::vector<std::vector<Vertex>> Q;  // r disjoint candidate sequences, disjoint from A
  std::size_t n = 1;                   // block size
};

struct IndiscernibleFamily {
  std::vector<std::vector<Vertex>> P;  // r blocks of n vertices, in index order
  std::size_t color_class_size = 0;    // indices in the monochromatic set used
};

// Colours index pairs {i < i'} by the type over A of
// (q_{1,i}, q_{1,i'}, ..., q_{r,i}, q_{r,i'}), finds a monochromatic index set I
// of size r*n, and assigns p_{j,t} = q_{j, I[j*n + t]}. Greedy extraction runs
// first; when it falls short on at most 64 indices an exact clique search
// decides. Throws ExtractionFailed with the largest set found.
IndiscernibleFamily extract(const IndiscernibilityProblem& p);

// Relation code of the ordered pair (a,b): bit 2k is R_k(a,b), bit 2k+1 is R_k(b,a).
unsigned pair_code(const std::vector<const Relation*>& rels, Vertex a, Vertex b);

// Pair-level check: one type over A per block, one code for increasing pairs
// inside each block, one code for each ordered pair of blocks. Equivalent to
// the full definition because all relations are binary. Returns the first
// counterexample.
std::optional<std::string> verify(const Structure& ambient, const VertexSet& A, const IndiscernibleFamily& f);

// The literal definition: every choice of increasing tuples of lengths
// e_j <= emax in each block, mapped to every other such choice and extended by
// the identity on A, must be a partial isomorphism.
std::optional<std::string> verify_exhaustive(const Structure& ambient, const VertexSet& A,
                                             const IndiscernibleFamily& f, std::size_t emax = 3);

enum class BlockType { ordered_by_relation, freely_permutable };

struct BlockVerdict {
  BlockType type = BlockType::freely_permutable;
  std::string relation;  // name of the ordering relation when ordered
};

// Throws DomainError when the family does not verify.
BlockVerdict totally_ordered_or_free(const Structure& ambient, const VertexSet& A, const IndiscernibleFamily& f,
                                     std::size_t block);

std::vector<std::string> relation_names(StructureKind k);

}  // namespace orbiteq
