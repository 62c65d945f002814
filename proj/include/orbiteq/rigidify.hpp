#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbiteq/analysis.hpp"
#include "orbiteq/autgroup.hpp"
#include "orbiteq/oracles.hpp"

namespace orbiteq {

struct SizeBounds {
  std::size_t n = 0;
  BigInt m = 0;           // C(n,2)
  BigInt k = 0;           // (m+1)(m+2)/2 - 1
  BigInt graph_bound = 0; // (2n + k(2m+k+5)) / 2
  BigInt tournament_m = 0;          // 2 C(n,2)
  BigInt tournament_sum = 0;        // n + sum_{i=2}^{M+1} 2^i
  BigInt tournament_closed_form = 0;  // n + 2^(n^2-n+2) - 2
  bool discrepancy = false;
};

SizeBounds size_bounds(std::size_t n);

struct RigidifyConfig {
  OracleSpec oracle;
  std::vector<Natural> targets;
  std::uint64_t budget = kDefaultBudget;  // per difference stream
  std::size_t probe = 512;                // comparability depth
  AutOptions aut;
  bool search_automorphisms = true;       // run autgroup on the output
};

struct LedgerEntry {
  std::string block;     // "V_01", "P_01", "S_c5_u0"
  VertexSet members;     // ids in the built structure, in selection order
  std::size_t size = 0;
};

struct RigidifyReport {
  Structure built;
  std::vector<Natural> labels;  // labels[i] is the oracle vertex numbered i
  VertexSet embedded_u;
  std::vector<LedgerEntry> ledger;
  SizeBounds bounds;
  bool within_bound = false;
  std::string certificate;           // "accepted" / "rejected" (tournaments), "not-applicable"
  std::string certificate_reason;
  bool indiscernible = false;        // blocks verified mutually indiscernible over U
  std::optional<bool> fixes_u;       // from automorphism search
  std::optional<BigInt> aut_order;
  std::vector<std::string> notes;    // deletions, size assignments, class structure
};

struct CertificateResult {
  bool accepted = false;
  std::string reason;
  bool targets_split = true;  // no maximal good set holds two vertices of U
};

// Sound test for trivial Aut(t): (a) non-singleton maximal good sets have
// pairwise distinct sizes; (b) every two distinct vertices lying in singleton
// blocks are separated by a vertex of F, the union of the non-singleton
// blocks. Rejection proves nothing.
CertificateResult certificate_check(const Tournament& t, const VertexSet& U = {});

// Blocks V_ij for ordered pairs i != j in lexicographic order with sizes
// 4, 8, 16, ..., each drawn from the out-difference of u_i over u_j.
RigidifyReport rigidify_tournament(const RigidifyConfig& cfg);

// Separating blocks P_ij, then huge blocks S_cu for target vertices that are
// ≈_W-equivalent to a block.
RigidifyReport rigidify_ordered_graph(const RigidifyConfig& cfg);

}  // namespace orbiteq
