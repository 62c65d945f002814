#include "orbiteq/indiscernible.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "orbiteq/errors.hpp"

namespace orbiteq {

namespace {

using Codes = std::vector<unsigned>;

void check_problem(const IndiscernibilityProblem& p) {
  if (p.Q.empty()) throw std::invalid_argument("indiscernibility problem needs r >= 1");
  if (p.n == 0) throw std::invalid_argument("indiscernibility problem needs n >= 1");
  const std::size_t order = order_of(p.ambient);
  std::vector<char> seen(order, 0);
  auto mark = [&](Vertex v) {
    if (v >= order) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    if (seen[v]) throw std::invalid_argument("vertex " + std::to_string(v) + " occurs twice among A and the Q_j");
    seen[v] = 1;
  };
  for (Vertex a : normalize_set(p.A)) mark(a);
  for (const auto& q : p.Q)
    for (Vertex v : q) mark(v);
}

// Largest clique in the colour-c graph restricted to `group`, by bitmask branch
// and bound. Stops once `goal` is reached.
std::vector<std::size_t> exact_clique(const std::vector<std::uint64_t>& adj, std::size_t goal) {
  std::uint64_t best = 0;
  int best_size = 0;
  auto expand = [&](auto&& self, std::uint64_t clique, int size, std::uint64_t cand) -> bool {
    if (cand == 0) {
      if (size > best_size) {
        best_size = size;
        best = clique;
      }
      return static_cast<std::size_t>(best_size) >= goal;
    }
    while (cand != 0) {
      if (size + std::popcount(cand) <= best_size) return false;
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      if (self(self, clique | (std::uint64_t{1} << v), size + 1, cand & adj[static_cast<std::size_t>(v)]))
        return true;
    }
    if (size > best_size) {
      best_size = size;
      best = clique;
    }
    return static_cast<std::size_t>(best_size) >= goal;
  };
  const std::uint64_t all = adj.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << adj.size()) - 1;
  expand(expand, 0, 0, all);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < adj.size(); ++i)
    if (best >> i & 1u) out.push_back(i);
  return out;
}

// Pivot Ramsey: take the least index as pivot, keep the largest colour class
// of the rest, repeat. Pivots sharing a colour form a monochromatic set.
std::vector<std::size_t> greedy_monochromatic(const std::vector<std::vector<std::size_t>>& colour,
                                              std::size_t count) {
  std::vector<std::size_t> live(count);
  for (std::size_t i = 0; i < count; ++i) live[i] = i;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> pivot_colour;
  while (!live.empty()) {
    const std::size_t v = live.front();
    pivots.push_back(v);
    if (live.size() == 1) {
      pivot_colour.push_back(SIZE_MAX);
      break;
    }
    std::map<std::size_t, std::vector<std::size_t>> classes;
    for (std::size_t k = 1; k < live.size(); ++k) classes[colour[v][live[k]]].push_back(live[k]);
    auto best = classes.begin();
    for (auto it = classes.begin(); it != classes.end(); ++it)
      if (it->second.size() > best->second.size()) best = it;
    pivot_colour.push_back(best->first);
    live = std::move(best->second);
  }
  std::map<std::size_t, std::vector<std::size_t>> by_colour;
  for (std::size_t k = 0; k + 1 < pivots.size(); ++k) by_colour[pivot_colour[k]].push_back(pivots[k]);
  std::vector<std::size_t> best{pivots.back()};
  for (auto& [c, members] : by_colour) {
    members.push_back(pivots.back());
    if (members.size() > best.size()) best = members;
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::string vstr(Vertex v) { return std::to_string(v); }

std::optional<std::string> shape_problem(std::size_t order, const VertexSet& A, const IndiscernibleFamily& f) {
  std::vector<char> seen(order, 0);
  for (Vertex a : A) {
    if (a >= order) return "vertex " + vstr(a) + " out of range";
    seen[a] = 1;
  }
  for (const auto& block : f.P)
    for (Vertex v : block) {
      if (v >= order) return "vertex " + vstr(v) + " out of range";
      if (seen[v]) return "vertex " + vstr(v) + " repeated across A and the blocks";
      seen[v] = 1;
    }
  return std::nullopt;
}

}  // namespace

unsigned pair_code(const std::vector<const Relation*>& rels, Vertex a, Vertex b) {
  unsigned code = 0;
  for (std::size_t k = 0; k < rels.size(); ++k) {
    code |= static_cast<unsigned>(rels[k]->test(a, b)) << (2 * k);
    code |= static_cast<unsigned>(rels[k]->test(b, a)) << (2 * k + 1);
  }
  return code;
}

std::vector<std::string> relation_names(StructureKind k) {
  switch (k) {
    case StructureKind::graph: return {"adjacency"};
    case StructureKind::tournament: return {"arc"};
    case StructureKind::ordered_graph: return {"adjacency", "order"};
  }
  return {};
}

IndiscernibleFamily extract(const IndiscernibilityProblem& p) {
  check_problem(p);
  const auto rels = relations(p.ambient);
  const VertexSet A = normalize_set(p.A);
  const std::size_t r = p.Q.size(), n = p.n, need = r * n;
  std::size_t length = SIZE_MAX;
  for (const auto& q : p.Q) length = std::min(length, q.size());

  IndiscernibleFamily out;
  if (n == 1 && length >= 1) {
    for (const auto& q : p.Q) out.P.push_back({q.front()});
    out.color_class_size = 1;
    return out;
  }
  // Unary colour of index i: the type over A of each q_{j,i}.
  std::map<Codes, std::vector<std::size_t>> unary;
  for (std::size_t i = 0; i < length; ++i) {
    Codes c;
    for (std::size_t j = 0; j < r; ++j)
      for (Vertex a : A) c.push_back(pair_code(rels, p.Q[j][i], a));
    unary[c].push_back(i);
  }
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [c, idx] : unary) groups.push_back(std::move(idx));
  std::sort(groups.begin(), groups.end());

  std::size_t largest = 0;
  for (const auto& group : groups) {
    const std::size_t g = group.size();
    // Pair colour of {i < i'}: codes among the 2r-sequence q_{1,i}, q_{1,i'}, ...
    std::map<Codes, std::size_t> palette;
    std::vector<std::vector<std::size_t>> colour(g, std::vector<std::size_t>(g, 0));
    for (std::size_t s = 0; s < g; ++s)
      for (std::size_t t = s + 1; t < g; ++t) {
        std::vector<Vertex> seq;
        for (std::size_t j = 0; j < r; ++j) {
          seq.push_back(p.Q[j][group[s]]);
          seq.push_back(p.Q[j][group[t]]);
        }
        Codes c;
        for (std::size_t a = 0; a < seq.size(); ++a)
          for (std::size_t b = a + 1; b < seq.size(); ++b) c.push_back(pair_code(rels, seq[a], seq[b]));
        auto [it, fresh] = palette.emplace(std::move(c), palette.size());
        colour[s][t] = colour[t][s] = it->second;
      }

    std::vector<std::size_t> found = greedy_monochromatic(colour, g);
    if (found.size() < need && g <= 64) {
      for (std::size_t c = 0; c < palette.size() && found.size() < need; ++c) {
        std::vector<std::uint64_t> adj(g, 0);
        for (std::size_t s = 0; s < g; ++s)
          for (std::size_t t = 0; t < g; ++t)
            if (s != t && colour[s][t] == c) adj[s] |= std::uint64_t{1} << t;
        auto clique = exact_clique(adj, need);
        if (clique.size() > found.size()) found = std::move(clique);
      }
    }
    largest = std::max(largest, found.size());
    if (found.size() < need) continue;

    found.resize(need);
    out.P.assign(r, {});
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t t = 0; t < n; ++t) out.P[j].push_back(p.Q[j][group[found[j * n + t]]]);
    out.color_class_size = need;
    return out;
  }
  throw ExtractionFailed("no monochromatic index set of size " + std::to_string(need) + " among " +
                             std::to_string(length) + " indices (largest " +
                             std::to_string(largest) + ")",
                         largest);
}

std::optional<std::string> verify(const Structure& ambient, const VertexSet& A_in, const IndiscernibleFamily& f) {
  const auto rels = relations(ambient);
  const VertexSet A = normalize_set(A_in);
  if (auto bad = shape_problem(order_of(ambient), A, f)) return bad;

  for (std::size_t j = 0; j < f.P.size(); ++j) {
    const auto& b = f.P[j];
    for (std::size_t s = 1; s < b.size(); ++s)
      for (Vertex a : A)
        if (pair_code(rels, b[s], a) != pair_code(rels, b[0], a))
          return "block " + std::to_string(j) + ": " + vstr(b[0]) + " and " + vstr(b[s]) + " differ over A at " +
                 vstr(a);
    for (std::size_t s = 0; s < b.size(); ++s)
      for (std::size_t t = s + 1; t < b.size(); ++t)
        if (pair_code(rels, b[s], b[t]) != pair_code(rels, b[0], b[1]))
          return "block " + std::to_string(j) + ": pair (" + vstr(b[s]) + "," + vstr(b[t]) + ") differs from (" +
                 vstr(b[0]) + "," + vstr(b[1]) + ")";
  }
  for (std::size_t j = 0; j < f.P.size(); ++j)
    for (std::size_t k = 0; k < f.P.size(); ++k) {
      if (j == k || f.P[j].empty() || f.P[k].empty()) continue;
      const unsigned ref = pair_code(rels, f.P[j][0], f.P[k][0]);
      for (Vertex x : f.P[j])
        for (Vertex y : f.P[k])
          if (pair_code(rels, x, y) != ref)
            return "blocks " + std::to_string(j) + "," + std::to_string(k) + ": pair (" + vstr(x) + "," + vstr(y) +
                   ") differs from (" + vstr(f.P[j][0]) + "," + vstr(f.P[k][0]) + ")";
    }
  return std::nullopt;
}

std::optional<std::string> verify_exhaustive(const Structure& ambient, const VertexSet& A_in,
                                             const IndiscernibleFamily& f, std::size_t emax) {
  const auto rels = relations(ambient);
  const VertexSet A = normalize_set(A_in);
  const std::size_t r = f.P.size();

  auto tuples_of = [&](const std::vector<Vertex>& block, std::size_t e) {
    std::vector<std::vector<Vertex>> out;
    std::vector<std::size_t> idx(e);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
      if (pos == e) {
        std::vector<Vertex> t;
        for (std::size_t i : idx) t.push_back(block[i]);
        out.push_back(std::move(t));
        return;
      }
      for (std::size_t i = start; i < block.size(); ++i) {
        idx[pos] = i;
        self(self, pos + 1, i + 1);
      }
    };
    rec(rec, 0, 0);
    return out;
  };

  std::vector<std::size_t> e(r, 0);
  std::vector<Vertex> src, dst;
  std::optional<std::string> failure;

  auto check_map = [&]() -> bool {
    std::vector<Vertex> from = A, to = A;
    from.insert(from.end(), src.begin(), src.end());
    to.insert(to.end(), dst.begin(), dst.end());
    for (std::size_t a = 0; a < from.size(); ++a)
      for (std::size_t b = a + 1; b < from.size(); ++b)
        if (pair_code(rels, from[a], from[b]) != pair_code(rels, to[a], to[b])) {
          std::string msg = "map sending";
          for (std::size_t i = A.size(); i < from.size(); ++i) msg += " " + vstr(from[i]) + "->" + vstr(to[i]);
          failure = msg + " is not an isomorphism at (" + vstr(from[a]) + "," + vstr(from[b]) + ")";
          return false;
        }
    return true;
  };

  auto over_blocks = [&](auto&& self, std::size_t j) -> bool {
    if (j == r) return check_map();
    const auto tuples = tuples_of(f.P[j], e[j]);
    for (const auto& s : tuples)
      for (const auto& d : tuples) {
        src.insert(src.end(), s.begin(), s.end());
        dst.insert(dst.end(), d.begin(), d.end());
        const bool ok = self(self, j + 1);
        src.resize(src.size() - s.size());
        dst.resize(dst.size() - d.size());
        if (!ok) return false;
      }
    return true;
  };

  auto over_lengths = [&](auto&& self, std::size_t j) -> bool {
    if (j == r) return over_blocks(over_blocks, 0);
    for (std::size_t len = 0; len <= std::min(emax, f.P[j].size()); ++len) {
      e[j] = len;
      if (!self(self, j + 1)) return false;
    }
    return true;
  };

  if (auto bad = shape_problem(order_of(ambient), A, f)) return bad;
  over_lengths(over_lengths, 0);
  return failure;
}

BlockVerdict totally_ordered_or_free(const Structure& ambient, const VertexSet& A, const IndiscernibleFamily& f,
                                     std::size_t block) {
  if (block >= f.P.size()) throw std::out_of_range("block index out of range");
  if (auto bad = verify(ambient, A, f)) throw DomainError("family is not indiscernible: " + *bad);
  const auto& b = f.P[block];
  if (b.size() < 2) return {BlockType::freely_permutable, ""};
  const auto rels = relations(ambient);
  const auto names = relation_names(kind_of(ambient));
  for (std::size_t k = 0; k < rels.size(); ++k)
    if (rels[k]->test(b[0], b[1]) != rels[k]->test(b[1], b[0])) return {BlockType::ordered_by_relation, names[k]};
  return {BlockType::freely_permutable, ""};
}

}  // namespace orbiteq
