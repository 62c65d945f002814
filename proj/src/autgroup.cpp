#include "orbiteq/autgroup.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "orbiteq/errors.hpp"

namespace orbiteq {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * kFnvPrime;
}

// Colour refinement plus backtracking over the individualisation tree.
class Search {
 public:
  Search(const Structure& s, const AutOptions& opts) : n_(order_of(s)), opts_(opts) {
    if (n_ > opts.vertex_cap)
      throw CapExceeded("automorphism search: " + std::to_string(n_) + " vertices exceeds cap " +
                        std::to_string(opts.vertex_cap));
    const auto rels = relations(s);
    code_.assign(n_ * n_, 0);
    for (Vertex a = 0; a < n_; ++a)
      for (Vertex b = 0; b < n_; ++b) {
        std::uint8_t c = 0;
        for (std::size_t k = 0; k < rels.size(); ++k) {
          c |= static_cast<std::uint8_t>(rels[k]->test(a, b) << (2 * k));
          c |= static_cast<std::uint8_t>(rels[k]->test(b, a) << (2 * k + 1));
        }
        code_[a * n_ + b] = c;
      }
  }

  AutomorphismSet run() {
    AutomorphismSet out;
    if (n_ == 0) return out;

    // First path.
    Colouring c{std::vector<std::uint32_t>(n_, 0), 1};
    path_trace_.push_back(refine(c));
    path_.push_back(c);
    while (c.cells < n_) {
      const auto cell = target_cell(c);
      base_.push_back(cell.front());
      cells_.push_back(cell);
      individualise(c, cell.front());
      path_trace_.push_back(refine(c));
      path_.push_back(c);
      count_node();
    }
    leaf_ = c.colour;

    UnionFind orbits(n_);
    std::vector<std::size_t> lengths(base_.size(), 1);
    for (std::size_t level = base_.size(); level-- > 0;) {
      const Vertex b = base_[level];
      std::vector<Vertex> failed;
      for (Vertex w : cells_[level]) {
        if (orbits.find(w) == orbits.find(b)) continue;
        if (std::any_of(failed.begin(), failed.end(), [&](Vertex f) { return orbits.find(f) == orbits.find(w); }))
          continue;
        std::optional<Permutation> g;
        if (transposition_ok(b, w)) {
          g = identity_permutation(n_);
          std::swap((*g)[b], (*g)[w]);
        } else {
          Colouring child = path_[level];
          individualise(child, w);
          const std::uint64_t t = refine(child);
          count_node();
          if (t == path_trace_[level + 1]) g = explore(child, level + 1);
        }
        if (!g) {
          failed.push_back(w);
          continue;
        }
        for (Vertex x = 0; x < n_; ++x) orbits.unite(x, (*g)[x]);
        out.generators.push_back(std::move(*g));
      }
      std::size_t len = 0;
      for (Vertex x = 0; x < n_; ++x) len += orbits.find(x) == orbits.find(b);
      lengths[level] = len;
    }

    // Generators were found deepest level first; report them shallow first.
    std::reverse(out.generators.begin(), out.generators.end());
    for (std::size_t len : lengths) out.order *= len;
    out.base = base_;
    out.basic_orbit_lengths = lengths;
    out.nodes = nodes_;
    return out;
  }

 private:
  struct Colouring {
    std::vector<std::uint32_t> colour;  // ranks 0..cells-1
    std::size_t cells = 0;
  };

  void count_node() {
    if (++nodes_ > opts_.node_budget)
      throw NodeBudgetExceeded("automorphism search exceeded node budget of " + std::to_string(opts_.node_budget));
  }

  std::uint8_t code(Vertex a, Vertex b) const { return code_[a * n_ + b]; }

  // Splits cells by (own colour, multiset of (neighbour colour, pair code)) until
  // stable. New colours are signature ranks, so the result is equivariant.
  std::uint64_t refine(Colouring& c) const {
    std::uint64_t trace = kFnvOffset;
    std::vector<std::vector<std::uint64_t>> sig(n_);
    std::vector<Vertex> order(n_);
    for (;;) {
      for (Vertex v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(c.colour[v]);
        for (Vertex w = 0; w < n_; ++w)
          if (w != v) s.push_back((std::uint64_t{c.colour[w]} << 8) | code(v, w));
        std::sort(s.begin() + 1, s.end());
      }
      std::iota(order.begin(), order.end(), Vertex{0});
      std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return sig[a] < sig[b]; });
      std::vector<std::uint32_t> fresh(n_);
      std::uint32_t rank = 0;
      std::uint64_t run = 0, multiplicity = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        const bool new_signature = i == 0 || sig[order[i]] != sig[order[i - 1]];
        if (new_signature) {
          if (i > 0) {
            trace = fold(fold(trace, run), multiplicity);
            ++rank;
          }
          run = kFnvOffset;
          for (std::uint64_t x : sig[order[i]]) run = fold(run, x);
          multiplicity = 0;
        }
        ++multiplicity;
        fresh[order[i]] = rank;
      }
      trace = fold(fold(trace, run), multiplicity);
      const std::size_t cells = rank + 1;
      trace = fold(trace, cells);
      const bool stable = cells == c.cells;
      c.colour = std::move(fresh);
      c.cells = cells;
      if (stable) return trace;
    }
  }

  // v keeps its colour, the rest of its cell moves to the next colour.
  static void individualise(Colouring& c, Vertex v) {
    const std::uint32_t k = c.colour[v];
    for (auto& x : c.colour)
      if (x > k) ++x;
    for (auto& x : c.colour)
      if (x == k) x = k + 1;
    c.colour[v] = k;
    ++c.cells;
  }

  // Smallest non-singleton cell, lowest colour on ties; vertices ascending.
  std::vector<Vertex> target_cell(const Colouring& c) const {
    std::vector<std::size_t> size(c.cells, 0);
    for (auto x : c.colour) ++size[x];
    std::size_t best = SIZE_MAX;
    for (std::size_t k = 0; k < c.cells; ++k)
      if (size[k] >= 2 && (best == SIZE_MAX || size[k] < size[best])) best = k;
    std::vector<Vertex> cell;
    for (Vertex v = 0; v < n_; ++v)
      if (c.colour[v] == best) cell.push_back(v);
    return cell;
  }

  bool transposition_ok(Vertex b, Vertex w) const {
    if (code(b, w) != code(w, b)) return false;
    for (Vertex x = 0; x < n_; ++x) {
      if (x == b || x == w) continue;
      if (code(b, x) != code(w, x) || code(x, b) != code(x, w)) return false;
    }
    return true;
  }

  bool preserves(const Permutation& g) const {
    for (Vertex a = 0; a < n_; ++a)
      for (Vertex b = 0; b < n_; ++b)
        if (code(a, b) != code(g[a], g[b])) return false;
    return true;
  }

  std::optional<Permutation> explore(const Colouring& c, std::size_t depth) {
    if (c.cells == n_) {
      std::vector<Vertex> inv(n_);
      for (Vertex u = 0; u < n_; ++u) inv[c.colour[u]] = u;
      Permutation g(n_);
      for (Vertex v = 0; v < n_; ++v) g[v] = inv[leaf_[v]];
      if (preserves(g)) return g;
      return std::nullopt;
    }
    if (depth + 1 >= path_trace_.size()) return std::nullopt;
    for (Vertex u : target_cell(c)) {
      Colouring child = c;
      individualise(child, u);
      const std::uint64_t t = refine(child);
      count_node();
      if (t != path_trace_[depth + 1]) continue;
      if (auto g = explore(child, depth + 1)) return g;
    }
    return std::nullopt;
  }

  std::size_t n_;
  AutOptions opts_;
  std::vector<std::uint8_t> code_;
  std::uint64_t nodes_ = 0;
  std::vector<Colouring> path_;
  std::vector<std::uint64_t> path_trace_;
  std::vector<Vertex> base_;
  std::vector<std::vector<Vertex>> cells_;
  std::vector<std::uint32_t> leaf_;
};

}  // namespace

AutomorphismSet automorphisms(const Structure& s, const AutOptions& opts) {
  return Search(s, opts).run();
}

bool is_rigid(const Structure& s, const AutOptions& opts) { return automorphisms(s, opts).order == 1; }

Partition orbits_of(std::size_t n, const std::vector<Permutation>& generators) {
  UnionFind uf(n);
  for (const auto& g : generators)
    for (Vertex x = 0; x < n; ++x) uf.unite(x, g[x]);
  std::vector<std::size_t> labels(n);
  for (Vertex x = 0; x < n; ++x) labels[x] = uf.find(x);
  return Partition::from_labels(labels);
}

Partition vertex_orbits(const Structure& s, const AutOptions& opts) {
  return orbits_of(order_of(s), automorphisms(s, opts).generators);
}

bool fixes_pointwise(const Structure& s, const VertexSet& U, const AutOptions& opts) {
  const std::size_t n = order_of(s);
  for (Vertex u : U)
    if (u >= n) throw std::out_of_range("vertex " + std::to_string(u) + " out of range");
  if (U.empty()) return true;
  const Partition orbits = vertex_orbits(s, opts);
  for (Vertex u : U)
    if (orbits.blocks[orbits.block_of(u)].size() != 1) return false;
  return true;
}

}  // namespace orbiteq
