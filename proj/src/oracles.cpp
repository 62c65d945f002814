#include "orbiteq/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "orbiteq/errors.hpp"

namespace orbiteq {

namespace {

bool bit_rule(Natural a, Natural b) {
  if (a == b) return false;
  Natural lo = std::min(a, b), hi = std::max(a, b);
  return lo < 64 && ((hi >> lo) & 1u) != 0;
}

bool layered_edge(Natural x, Natural y) {
  if (x == y) return false;
  const bool xs = x & 1u, ys = y & 1u;
  if (xs && ys) return false;
  if (!xs && !ys) return bit_rule(x / 2, y / 2);
  // One shadow 2k+1 and one base 2m: edge iff m ~ k in the base layer and m is even.
  Natural k = (xs ? x : y) / 2, m = (xs ? y : x) / 2;
  return m % 2 == 0 && bit_rule(k, m);
}

void check_finite_range(const OracleSpec& o, Natural x, Natural y) {
  const std::size_t n = *o.universe();
  if (x >= n || y >= n)
    throw DomainError("finite oracle: vertex " + std::to_string(std::max(x, y)) + " out of range for " +
                      std::to_string(n) + " vertices");
}

}  // namespace

bool OracleSpec::is_tournament() const {
  if (kind == OracleKind::finite) return wrapped && kind_of(*wrapped) == StructureKind::tournament;
  return kind == OracleKind::generic_tournament || kind == OracleKind::bit_tournament;
}

bool OracleSpec::is_graph() const { return !is_tournament(); }

bool OracleSpec::is_ordered() const {
  if (kind == OracleKind::finite) return wrapped && kind_of(*wrapped) == StructureKind::ordered_graph;
  return kind == OracleKind::layered_rado;
}

std::optional<std::size_t> OracleSpec::universe() const {
  if (kind != OracleKind::finite) return std::nullopt;
  if (!wrapped) throw DomainError("finite oracle without a wrapped structure");
  return order_of(*wrapped);
}

std::string oracle_kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::rado: return "rado";
    case OracleKind::generic_tournament: return "generic-tournament";
    case OracleKind::layered_rado: return "layered-rado";
    case OracleKind::bit_tournament: return "bit-tournament";
    case OracleKind::finite: return "finite";
  }
  return "?";
}

OracleSpec parse_oracle(const std::string& text) {
  std::string name = text, arg;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  auto parse_seed = [&]() -> std::uint64_t {
    if (arg.empty()) return 0;
    std::size_t used = 0;
    std::uint64_t s = 0;
    try {
      s = std::stoull(arg, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size()) throw std::invalid_argument("bad oracle seed \"" + arg + "\"");
    return s;
  };
  if (name == "generic" || name == "generic-tournament") return OracleSpec::generic_tournament(parse_seed());
  if (!arg.empty()) throw std::invalid_argument("oracle \"" + name + "\" takes no seed");
  if (name == "rado") return OracleSpec::rado();
  if (name == "layered-rado" || name == "layered") return OracleSpec::layered_rado();
  if (name == "bit-tournament" || name == "bit") return OracleSpec::bit_tournament();
  throw std::invalid_argument("unknown oracle kind \"" + name + "\"");
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool prf_bit(std::uint64_t seed, Natural a, Natural b) {
  const Natural lo = std::min(a, b), hi = std::max(a, b);
  const std::uint64_t z = mix64(seed ^ (lo * 0x9E3779B97F4A7C15ULL) ^ std::rotl(hi, 17));
  return (std::popcount(z) & 1) != 0;
}

bool query_edge(const OracleSpec& o, Natural x, Natural y) {
  switch (o.kind) {
    case OracleKind::rado: return bit_rule(x, y);
    case OracleKind::layered_rado: return layered_edge(x, y);
    case OracleKind::finite: {
      if (o.is_tournament()) throw DomainError("edge query on a tournament oracle");
      check_finite_range(o, x, y);
      if (x == y) return false;
      const auto& s = *o.wrapped;
      const auto v = static_cast<Vertex>(x), w = static_cast<Vertex>(y);
      if (auto g = std::get_if<Graph>(&s)) return g->adjacent(v, w);
      return std::get<OrderedGraph>(s).base.adjacent(v, w);
    }
    default: throw DomainError("edge query on a tournament oracle");
  }
}

bool query_arc(const OracleSpec& o, Natural x, Natural y) {
  if (x == y) return false;
  switch (o.kind) {
    case OracleKind::generic_tournament: {
      const bool forward = prf_bit(o.seed, x, y);
      return x < y ? forward : !forward;
    }
    case OracleKind::bit_tournament: {
      const bool low_beats_high = bit_rule(x, y);
      return x < y ? low_beats_high : !low_beats_high;
    }
    case OracleKind::finite: {
      if (!o.is_tournament()) throw DomainError("arc query on a graph oracle");
      check_finite_range(o, x, y);
      return std::get<Tournament>(*o.wrapped).beats(static_cast<Vertex>(x), static_cast<Vertex>(y));
    }
    default: throw DomainError("arc query on a graph oracle");
  }
}

DifferenceStream::DifferenceStream(const OracleSpec& o, DiffQuery q, std::uint64_t budget)
    : oracle_(&o), q_(std::move(q)), budget_(budget), cursor_(q_.from) {
  if (q_.x == q_.y) throw std::invalid_argument("difference query needs x != y");
  const bool out_side = q_.side == DiffSide::out_x_minus_y || q_.side == DiffSide::out_y_minus_x;
  if (out_side != o.is_tournament())
    throw DomainError(out_side ? "out-neighbour difference on a graph oracle"
                               : "neighbour difference on a tournament oracle");
  exclude_ = q_.exclude;
  exclude_.push_back(q_.x);
  exclude_.push_back(q_.y);
  std::sort(exclude_.begin(), exclude_.end());
  exclude_.erase(std::unique(exclude_.begin(), exclude_.end()), exclude_.end());
}

bool DifferenceStream::member(Natural z) const {
  const bool forward = q_.side == DiffSide::gamma_x_minus_y || q_.side == DiffSide::out_x_minus_y;
  const Natural a = forward ? q_.x : q_.y, b = forward ? q_.y : q_.x;
  if (oracle_->is_tournament()) return query_arc(*oracle_, a, z) && !query_arc(*oracle_, b, z);
  return query_edge(*oracle_, a, z) && !query_edge(*oracle_, b, z);
}

Natural DifferenceStream::next() {
  const auto limit = oracle_->universe();
  while (scanned_ < budget_) {
    if (limit && cursor_ >= *limit)
      throw BudgetExhausted("difference side is finite: universe of " + std::to_string(*limit) +
                            " vertices exhausted");
    const Natural z = cursor_++;
    ++scanned_;
    if (std::binary_search(exclude_.begin(), exclude_.end(), z)) continue;
    if (member(z)) return z;
  }
  throw BudgetExhausted("difference scan cap of " + std::to_string(budget_) + " reached for pair (" +
                        std::to_string(q_.x) + "," + std::to_string(q_.y) + ")");
}

std::vector<Natural> enumerate_difference(const OracleSpec& o, const DiffQuery& q, std::uint64_t budget) {
  std::vector<Natural> out;
  if (q.want == 0) return out;
  DifferenceStream stream(o, q, budget);
  while (out.size() < q.want) out.push_back(stream.next());
  return out;
}

std::string comparability_name(Comparability c) {
  switch (c) {
    case Comparability::less: return "less";
    case Comparability::greater: return "greater";
    case Comparability::incomparable: return "incomparable";
    case Comparability::unknown: return "unknown";
  }
  return "?";
}

boost::dynamic_bitset<> neighborhood_window(const OracleSpec& o, Natural x, std::size_t probe) {
  std::size_t width = probe;
  if (auto n = o.universe()) width = std::min(width, *n);
  boost::dynamic_bitset<> bits(probe);
  for (Natural w = 0; w < width; ++w)
    if (query_edge(o, x, w)) bits.set(w);
  return bits;
}

Comparability compare_windows(const boost::dynamic_bitset<>& gx, const boost::dynamic_bitset<>& gy,
                              std::size_t probe) {
  if (probe == 0) return Comparability::unknown;
  const std::size_t threshold = std::max<std::size_t>(1, probe / 8);
  const std::size_t x_only = (gx - gy).count(), y_only = (gy - gx).count();
  if (y_only == 0 && x_only >= threshold) return Comparability::less;
  if (x_only == 0 && y_only >= threshold) return Comparability::greater;
  if (x_only >= threshold && y_only >= threshold) return Comparability::incomparable;
  return Comparability::unknown;
}

Comparability comparability(const OracleSpec& o, Natural x, Natural y, std::size_t probe) {
  if (x == y) throw std::invalid_argument("comparability needs x != y");
  if (probe == 0 || o.is_tournament()) return Comparability::unknown;
  // The BIT presentation has an empty order: both differences are always infinite.
  if (o.kind == OracleKind::rado) return Comparability::incomparable;
  if (o.kind == OracleKind::finite && o.is_ordered()) {
    check_finite_range(o, x, y);
    const auto& og = std::get<OrderedGraph>(*o.wrapped);
    const auto v = static_cast<Vertex>(x), w = static_cast<Vertex>(y);
    if (og.less(v, w)) return Comparability::less;
    if (og.less(w, v)) return Comparability::greater;
    return Comparability::incomparable;
  }
  return compare_windows(neighborhood_window(o, x, probe), neighborhood_window(o, y, probe), probe);
}

Sample sample_structure(const OracleSpec& o, std::vector<Natural> points, std::size_t probe) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  Sample out;
  out.labels = points;
  if (o.is_tournament()) {
    Tournament t(n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j) {
        if (query_arc(o, points[i], points[j]))
          t.orient(i, j);
        else
          t.orient(j, i);
      }
    out.structure = std::move(t);
    return out;
  }
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (query_edge(o, points[i], points[j])) g.add_edge(i, j);
  if (!o.is_ordered()) {
    out.structure = std::move(g);
    return out;
  }
  OrderedGraph og(n);
  og.base = std::move(g);
  if (o.kind == OracleKind::finite) {
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        if (i != j && comparability(o, points[i], points[j], probe) == Comparability::less) og.order.set(i, j);
  } else {
    std::vector<boost::dynamic_bitset<>> windows;
    windows.reserve(n);
    for (Natural p : points) windows.push_back(neighborhood_window(o, p, probe));
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        if (i != j && compare_windows(windows[i], windows[j], probe) == Comparability::less) og.order.set(i, j);
  }
  out.structure = std::move(og);
  return out;
}

}  // namespace orbiteq
