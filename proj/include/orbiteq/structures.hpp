#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbiteq/permutation.hpp"

namespace orbiteq {

using VertexSet = std::vector<Vertex>;  // sorted, duplicate-free
using VertexPair = std::pair<Vertex, Vertex>;

// Dense binary relation on {0..n-1}.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool test(Vertex i, Vertex j) const { return bits_[i * n_ + j] != 0; }
  void set(Vertex i, Vertex j, bool v = true) { bits_[i * n_ + j] = v ? 1 : 0; }

  // Pairs (i,j) with test(i,j), lexicographic.
  std::vector<VertexPair> pairs() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct Graph {
  std::size_t n = 0;
  Relation adj;  // kept symmetric

  Graph() = default;
  explicit Graph(std::size_t order) : n(order), adj(order) {}
  static Graph from_edges(std::size_t n, const std::vector<VertexPair>& edges);

  bool adjacent(Vertex x, Vertex y) const { return adj.test(x, y); }
  void add_edge(Vertex x, Vertex y) {
    adj.set(x, y);
    adj.set(y, x);
  }
  std::vector<VertexPair> edges() const;  // a < b, sorted

  friend bool operator==(const Graph&, const Graph&) = default;
};

struct Tournament {
  std::size_t n = 0;
  Relation arc;  // arc.test(x,y) means x -> y

  Tournament() = default;
  explicit Tournament(std::size_t order) : n(order), arc(order) {}
  static Tournament from_arcs(std::size_t n, const std::vector<VertexPair>& arcs);

  bool beats(Vertex x, Vertex y) const { return arc.test(x, y); }
  void orient(Vertex x, Vertex y) {
    arc.set(x, y, true);
    arc.set(y, x, false);
  }
  std::vector<VertexPair> arcs() const { return arc.pairs(); }

  friend bool operator==(const Tournament&, const Tournament&) = default;
};

struct OrderedGraph {
  Graph base;
  Relation order;  // order.test(x,y) means x < y

  OrderedGraph() = default;
  explicit OrderedGraph(std::size_t n) : base(n), order(n) {}

  std::size_t size() const { return base.n; }
  bool less(Vertex x, Vertex y) const { return order.test(x, y); }

  friend bool operator==(const OrderedGraph&, const OrderedGraph&) = default;
};

using Structure = std::variant<Graph, Tournament, OrderedGraph>;

enum class StructureKind { graph, tournament, ordered_graph };

StructureKind kind_of(const Structure& s);
std::string kind_name(StructureKind k);
std::optional<StructureKind> parse_kind(const std::string& name);
std::size_t order_of(const Structure& s);

// The relations an isomorphism must preserve, in a fixed order.
std::vector<const Relation*> relations(const Structure& s);

// nullopt when all invariants hold, otherwise the first violation with a witness.
std::optional<std::string> validate(const Structure& s);

struct InducedResult {
  Structure structure;
  VertexSet relabel;  // relabel[i] is the original vertex now numbered i
};

// Throws std::out_of_range for vertices outside the structure.
InducedResult induced(const Structure& s, VertexSet subset);

VertexSet neighbors(const Graph& g, Vertex x);
VertexSet outneighbors(const Tournament& t, Vertex x);

// Relabels s so vertex v becomes p[v].
Structure permute(const Structure& s, const Permutation& p);
bool is_automorphism(const Structure& s, const Permutation& p);

// Complete search. Throws CapExceeded above `cap` vertices and
// std::invalid_argument when the kinds differ.
std::optional<Permutation> are_isomorphic(const Structure& a, const Structure& b, std::size_t cap = 12);

VertexSet normalize_set(VertexSet s);

// Disjoint non-empty blocks; members sorted, blocks ordered by least member.
struct Partition {
  std::vector<VertexSet> blocks;

  static Partition normalized(std::vector<VertexSet> blocks);
  static Partition singletons(std::size_t n);
  // Blocks from a class label per vertex.
  static Partition from_labels(const std::vector<std::size_t>& labels);

  std::size_t block_of(Vertex v) const;  // throws std::out_of_range
  friend bool operator==(const Partition&, const Partition&) = default;
};

}  // namespace orbiteq
