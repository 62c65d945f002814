#pragma once

#include <string>
#include <vector>

#include "orbiteq/structures.hpp"

namespace orbiteq {

enum class SeparatorDirection {
  none,    // graph separator
  x_to_y,  // x -> z -> y
  y_to_x,  // y -> z -> x
};

struct SeparatorReport {
  VertexPair pair;
  VertexSet separators;
  std::vector<SeparatorDirection> directions;  // parallel to separators
};

// (Γ(x) △ Γ(y)) \ {x, y}.
SeparatorReport graph_separators(const Graph& g, Vertex x, Vertex y);

// z with x -> z -> y or y -> z -> x.
SeparatorReport tournament_separators(const Tournament& t, Vertex x, Vertex y);

bool separates(const Tournament& t, Vertex z, Vertex x, Vertex y);

enum class ClassType { complete, null, mixed };

std::string class_type_name(ClassType t);

struct ApproxClasses {
  Partition partition;
  std::vector<ClassType> types;  // parallel to partition.blocks; singletons are null
};

// x ≈_Y y iff (Γ(x) △ Γ(y)) ∩ Y ⊆ {x, y}.
bool approx_related(const Graph& g, const VertexSet& Y, Vertex x, Vertex y);

// Classes of ≈_Y on Y, grouped by the pairwise relation.
ApproxClasses approx_classes(const Graph& g, VertexSet Y);

// Blocks are the maximal good sets. Two vertices share a block iff the least
// nice set containing both induces a transitive subtournament.
Partition maximal_good_partition(const Tournament& t);

bool is_nice(const Tournament& t, const VertexSet& s);
bool is_transitive_subtournament(const Tournament& t, const VertexSet& s);
bool is_good(const Tournament& t, const VertexSet& s);

struct Equiv0Result {
  Partition partition;
  // True when the thresholded relation was not transitive and closure merged more.
  bool closure_extended = false;
};

// Transitive closure of |Γ(x) △ Γ(y)| <= threshold.
Equiv0Result equiv0_classes(const Graph& g, std::size_t threshold);

// Edge {x,y} iff dist(x,y) is even and positive. Throws DomainError if disconnected.
Graph even_distance_graph(const Graph& g);

}  // namespace orbiteq
