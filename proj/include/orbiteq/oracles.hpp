#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "orbiteq/structures.hpp"

namespace orbiteq {

using Natural = std::uint64_t;

enum class OracleKind {
  rado,                // i < j adjacent iff bit i of j is 1
  generic_tournament,  // i < j: i -> j iff prf_bit(seed, i, j)
  layered_rado,        // 2k base, 2k+1 its shadow
  bit_tournament,      // i < j: i -> j iff bit i of j is 1
  finite,              // a wrapped finite structure
};

struct OracleSpec {
  OracleKind kind = OracleKind::rado;
  std::uint64_t seed = 0;
  std::optional<Structure> wrapped;

  static OracleSpec rado() { return {OracleKind::rado, 0, std::nullopt}; }
  static OracleSpec generic_tournament(std::uint64_t seed) { return {OracleKind::generic_tournament, seed, std::nullopt}; }
  static OracleSpec layered_rado() { return {OracleKind::layered_rado, 0, std::nullopt}; }
  static OracleSpec bit_tournament() { return {OracleKind::bit_tournament, 0, std::nullopt}; }
  static OracleSpec finite(Structure s) { return {OracleKind::finite, 0, std::move(s)}; }

  bool is_tournament() const;
  bool is_graph() const;
  bool is_ordered() const;
  // Finite universe size, or nullopt for the countable oracles.
  std::optional<std::size_t> universe() const;
};

std::string oracle_kind_name(OracleKind k);

// Accepts "rado", "layered-rado", "bit-tournament", "generic[:seed]" and
// "generic-tournament[:seed]". Finite wrappers come from JSON only.
OracleSpec parse_oracle(const std::string& text);

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// Parity of popcount(mix64(seed ^ (min * 0x9E3779B97F4A7C15) ^ rotl(max, 17))).
bool prf_bit(std::uint64_t seed, Natural a, Natural b);

bool query_edge(const OracleSpec& o, Natural x, Natural y);
bool query_arc(const OracleSpec& o, Natural x, Natural y);

enum class DiffSide { gamma_x_minus_y, gamma_y_minus_x, out_x_minus_y, out_y_minus_x };

struct DiffQuery {
  Natural x = 0;
  Natural y = 1;
  std::size_t want = 0;
  DiffSide side = DiffSide::gamma_x_minus_y;
  std::vector<Natural> exclude;
  Natural from = 0;  // scanning starts here
};

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 22;

// Scans naturals upward from q.from, skipping x, y and q.exclude. The budget
// caps the number of naturals examined.
class DifferenceStream {
 public:
  DifferenceStream(const OracleSpec& o, DiffQuery q, std::uint64_t budget = kDefaultBudget);

  // Next member of the difference. Throws BudgetExhausted when the scan cap
  // or the end of a finite universe is reached first.
  Natural next();
  std::uint64_t scanned() const { return scanned_; }

 private:
  bool member(Natural z) const;

  const OracleSpec* oracle_;
  DiffQuery q_;
  std::vector<Natural> exclude_;  // sorted
  std::uint64_t budget_;
  Natural cursor_;
  std::uint64_t scanned_ = 0;
};

std::vector<Natural> enumerate_difference(const OracleSpec& o, const DiffQuery& q,
                                          std::uint64_t budget = kDefaultBudget);

enum class Comparability { less, greater, incomparable, unknown };  // less means x < y

std::string comparability_name(Comparability c);

// Neighbourhood of x restricted to [0, probe).
boost::dynamic_bitset<> neighborhood_window(const OracleSpec& o, Natural x, std::size_t probe);

// x < y when gy has nothing outside gx and gx has at least max(1, probe/8)
// elements outside gy; incomparable when both sides reach the threshold.
Comparability compare_windows(const boost::dynamic_bitset<>& gx, const boost::dynamic_bitset<>& gy,
                              std::size_t probe);

Comparability comparability(const OracleSpec& o, Natural x, Natural y, std::size_t probe);

struct Sample {
  Structure structure;
  std::vector<Natural> labels;  // labels[i] is the oracle vertex numbered i
};

Sample sample_structure(const OracleSpec& o, std::vector<Natural> points, std::size_t probe = 512);

}  // namespace orbiteq
