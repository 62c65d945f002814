#include "orbiteq/structures.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "orbiteq/errors.hpp"

namespace orbiteq {

namespace {

std::string pair_str(Vertex a, Vertex b) {
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

std::string arc_str(Vertex a, Vertex b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::optional<std::string> validate_graph(const Graph& g) {
  if (g.adj.size() != g.n) return "relation size does not match n";
  for (Vertex x = 0; x < g.n; ++x) {
    if (g.adj.test(x, x)) return "loop at " + std::to_string(x);
    for (Vertex y = x + 1; y < g.n; ++y)
      if (g.adj.test(x, y) != g.adj.test(y, x)) return "asymmetric edge on " + pair_str(x, y);
  }
  return std::nullopt;
}

std::optional<std::string> validate_tournament(const Tournament& t) {
  if (t.arc.size() != t.n) return "relation size does not match n";
  for (Vertex x = 0; x < t.n; ++x) {
    if (t.arc.test(x, x)) return "loop at " + std::to_string(x);
    for (Vertex y = x + 1; y < t.n; ++y) {
      bool f = t.arc.test(x, y), b = t.arc.test(y, x);
      if (f && b) return "both directions on " + pair_str(x, y);
      if (!f && !b) return "no arc on " + pair_str(x, y);
    }
  }
  return std::nullopt;
}

std::optional<std::string> validate_ordered(const OrderedGraph& o) {
  if (auto v = validate_graph(o.base)) return v;
  const std::size_t n = o.base.n;
  if (o.order.size() != n) return "order size does not match n";
  for (Vertex x = 0; x < n; ++x) {
    if (o.order.test(x, x)) return "order not irreflexive at " + std::to_string(x);
    for (Vertex y = x + 1; y < n; ++y)
      if (o.order.test(x, y) && o.order.test(y, x)) return "order not antisymmetric on " + pair_str(x, y);
  }
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y) {
      if (!o.order.test(x, y)) continue;
      for (Vertex z = 0; z < n; ++z)
        if (o.order.test(y, z) && !o.order.test(x, z))
          return "not transitive: " + arc_str(x, y) + "," + arc_str(y, z) + " without " + arc_str(x, z);
    }
  return std::nullopt;
}

Relation restrict(const Relation& r, const VertexSet& keep) {
  Relation out(keep.size());
  for (Vertex i = 0; i < keep.size(); ++i)
    for (Vertex j = 0; j < keep.size(); ++j)
      if (r.test(keep[i], keep[j])) out.set(i, j);
  return out;
}

Relation relabel(const Relation& r, const Permutation& p) {
  Relation out(r.size());
  for (Vertex i = 0; i < r.size(); ++i)
    for (Vertex j = 0; j < r.size(); ++j)
      if (r.test(i, j)) out.set(p[i], p[j]);
  return out;
}

}  // namespace

std::vector<VertexPair> Relation::pairs() const {
  std::vector<VertexPair> out;
  for (Vertex i = 0; i < n_; ++i)
    for (Vertex j = 0; j < n_; ++j)
      if (test(i, j)) out.emplace_back(i, j);
  return out;
}

Graph Graph::from_edges(std::size_t n, const std::vector<VertexPair>& edges) {
  Graph g(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::out_of_range("edge " + pair_str(a, b) + " out of range");
    g.add_edge(a, b);
  }
  return g;
}

std::vector<VertexPair> Graph::edges() const {
  std::vector<VertexPair> out;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (adj.test(i, j)) out.emplace_back(i, j);
  return out;
}

Tournament Tournament::from_arcs(std::size_t n, const std::vector<VertexPair>& arcs) {
  Tournament t(n);
  for (auto [a, b] : arcs) {
    if (a >= n || b >= n) throw std::out_of_range("arc " + arc_str(a, b) + " out of range");
    t.arc.set(a, b);
  }
  return t;
}

StructureKind kind_of(const Structure& s) {
  return static_cast<StructureKind>(s.index());
}

std::string kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::graph: return "graph";
    case StructureKind::tournament: return "tournament";
    case StructureKind::ordered_graph: return "ordered-graph";
  }
  return "?";
}

std::optional<StructureKind> parse_kind(const std::string& name) {
  if (name == "graph") return StructureKind::graph;
  if (name == "tournament") return StructureKind::tournament;
  if (name == "ordered-graph") return StructureKind::ordered_graph;
  return std::nullopt;
}

std::size_t order_of(const Structure& s) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, OrderedGraph>)
          return x.base.n;
        else
          return x.n;
      },
      s);
}

std::vector<const Relation*> relations(const Structure& s) {
  if (auto g = std::get_if<Graph>(&s)) return {&g->adj};
  if (auto t = std::get_if<Tournament>(&s)) return {&t->arc};
  const auto& o = std::get<OrderedGraph>(s);
  return {&o.base.adj, &o.order};
}

std::optional<std::string> validate(const Structure& s) {
  if (auto g = std::get_if<Graph>(&s)) return validate_graph(*g);
  if (auto t = std::get_if<Tournament>(&s)) return validate_tournament(*t);
  return validate_ordered(std::get<OrderedGraph>(s));
}

VertexSet normalize_set(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Partition Partition::normalized(std::vector<VertexSet> blocks) {
  for (auto& b : blocks) b = normalize_set(std::move(b));
  std::erase_if(blocks, [](const VertexSet& b) { return b.empty(); });
  std::sort(blocks.begin(), blocks.end(), [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return Partition{std::move(blocks)};
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  for (Vertex v = 0; v < n; ++v) p.blocks.push_back({v});
  return p;
}

Partition Partition::from_labels(const std::vector<std::size_t>& labels) {
  std::vector<VertexSet> blocks;
  std::vector<std::size_t> slot;
  for (Vertex v = 0; v < labels.size(); ++v) {
    if (labels[v] >= slot.size()) slot.resize(labels[v] + 1, SIZE_MAX);
    if (slot[labels[v]] == SIZE_MAX) {
      slot[labels[v]] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[labels[v]]].push_back(v);
  }
  return normalized(std::move(blocks));
}

std::size_t Partition::block_of(Vertex v) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), v)) return i;
  throw std::out_of_range("vertex " + std::to_string(v) + " not covered by partition");
}

InducedResult induced(const Structure& s, VertexSet subset) {
  subset = normalize_set(std::move(subset));
  const std::size_t n = order_of(s);
  for (Vertex v : subset)
    if (v >= n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  InducedResult r;
  if (auto g = std::get_if<Graph>(&s)) {
    Graph h(subset.size());
    h.adj = restrict(g->adj, subset);
    r.structure = std::move(h);
  } else if (auto t = std::get_if<Tournament>(&s)) {
    Tournament h(subset.size());
    h.arc = restrict(t->arc, subset);
    r.structure = std::move(h);
  } else {
    const auto& o = std::get<OrderedGraph>(s);
    OrderedGraph h(subset.size());
    h.base.adj = restrict(o.base.adj, subset);
    h.order = restrict(o.order, subset);
    r.structure = std::move(h);
  }
  r.relabel = std::move(subset);
  return r;
}

VertexSet neighbors(const Graph& g, Vertex x) {
  if (x >= g.n) throw std::out_of_range("vertex " + std::to_string(x) + " out of range");
  VertexSet out;
  for (Vertex y = 0; y < g.n; ++y)
    if (y != x && g.adj.test(x, y)) out.push_back(y);
  return out;
}

VertexSet outneighbors(const Tournament& t, Vertex x) {
  if (x >= t.n) throw std::out_of_range("vertex " + std::to_string(x) + " out of range");
  VertexSet out;
  for (Vertex y = 0; y < t.n; ++y)
    if (y != x && t.arc.test(x, y)) out.push_back(y);
  return out;
}

Structure permute(const Structure& s, const Permutation& p) {
  if (p.size() != order_of(s) || !is_bijection(p)) throw std::invalid_argument("permute: not a permutation of the vertices");
  if (auto g = std::get_if<Graph>(&s)) {
    Graph h(g->n);
    h.adj = relabel(g->adj, p);
    return h;
  }
  if (auto t = std::get_if<Tournament>(&s)) {
    Tournament h(t->n);
    h.arc = relabel(t->arc, p);
    return h;
  }
  const auto& o = std::get<OrderedGraph>(s);
  OrderedGraph h(o.size());
  h.base.adj = relabel(o.base.adj, p);
  h.order = relabel(o.order, p);
  return h;
}

bool is_automorphism(const Structure& s, const Permutation& p) {
  const std::size_t n = order_of(s);
  if (p.size() != n || !is_bijection(p)) return false;
  for (const Relation* r : relations(s))
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        if (r->test(i, j) != r->test(p[i], p[j])) return false;
  return true;
}

std::optional<Permutation> are_isomorphic(const Structure& a, const Structure& b, std::size_t cap) {
  if (kind_of(a) != kind_of(b)) throw std::invalid_argument("are_isomorphic: structure kinds differ");
  const std::size_t n = order_of(a);
  if (n > cap || order_of(b) > cap)
    throw CapExceeded("are_isomorphic: " + std::to_string(std::max(n, order_of(b))) +
                      " vertices exceeds cap " + std::to_string(cap));
  if (order_of(b) != n) return std::nullopt;
  const auto ra = relations(a), rb = relations(b);

  // Per-vertex out/in counts for each relation; only a pruning filter.
  auto profile = [n](const std::vector<const Relation*>& rs, Vertex v) {
    std::vector<std::size_t> p;
    for (const Relation* r : rs) {
      std::size_t out = 0, in = 0;
      for (Vertex w = 0; w < n; ++w) {
        out += r->test(v, w);
        in += r->test(w, v);
      }
      p.push_back(out);
      p.push_back(in);
    }
    return p;
  };
  std::vector<std::vector<std::size_t>> pa(n), pb(n);
  for (Vertex v = 0; v < n; ++v) {
    pa[v] = profile(ra, v);
    pb[v] = profile(rb, v);
  }
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  Permutation map(n);
  std::vector<bool> used(n, false);
  auto consistent = [&](Vertex i, Vertex img) {
    for (std::size_t k = 0; k < ra.size(); ++k) {
      if (ra[k]->test(i, i) != rb[k]->test(img, img)) return false;
      for (Vertex j = 0; j < i; ++j)
        if (ra[k]->test(i, j) != rb[k]->test(img, map[j]) || ra[k]->test(j, i) != rb[k]->test(map[j], img))
          return false;
    }
    return true;
  };
  auto search = [&](auto&& self, Vertex i) -> bool {
    if (i == n) return true;
    for (Vertex c = 0; c < n; ++c) {
      if (used[c] || pa[i] != pb[c] || !consistent(i, c)) continue;
      used[c] = true;
      map[i] = c;
      if (self(self, i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (search(search, 0)) return map;
  return std::nullopt;
}

}  // namespace orbiteq
