#include "orbiteq/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "orbiteq/errors.hpp"

namespace orbiteq {

namespace {

void check_vertex(std::size_t n, Vertex v) {
  if (v >= n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

void check_pair(std::size_t n, Vertex x, Vertex y) {
  check_vertex(n, x);
  check_vertex(n, y);
  if (x == y) throw std::invalid_argument("separator query needs x != y");
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> labels() {
    std::vector<std::size_t> out(parent_.size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = find(v);
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Grows {x,y} to the least nice set containing it. Returns false as soon as
// the set stops being transitive, since every superset then fails too.
bool least_module_is_transitive(const Tournament& t, Vertex x, Vertex y) {
  const std::size_t n = t.n;
  std::vector<char> in(n, 0);
  std::vector<std::size_t> wins_in_m(n, 0);  // |{a in M : z -> a}|
  std::vector<std::size_t> members;
  std::vector<char> degree_used(n + 1, 0);
  std::size_t size = 0;

  auto add = [&](Vertex v) {
    in[v] = 1;
    members.push_back(v);
    ++size;
    for (Vertex z = 0; z < n; ++z)
      if (z != v && t.beats(z, v)) ++wins_in_m[z];
  };
  auto transitive = [&] {
    // A tournament is transitive iff its score sequence is 0..|M|-1.
    std::fill(degree_used.begin(), degree_used.begin() + static_cast<std::ptrdiff_t>(size), 0);
    for (std::size_t a : members) {
      const std::size_t d = wins_in_m[a];
      if (d >= size || degree_used[d]) return false;
      degree_used[d] = 1;
    }
    return true;
  };

  add(x);
  add(y);
  for (;;) {
    if (!transitive()) return false;
    bool grew = false;
    for (Vertex z = 0; z < n; ++z) {
      if (in[z]) continue;
      if (wins_in_m[z] != 0 && wins_in_m[z] != size) {
        add(z);
        grew = true;
        break;
      }
    }
    if (!grew) return true;
  }
}

}  // namespace

SeparatorReport graph_separators(const Graph& g, Vertex x, Vertex y) {
  check_pair(g.n, x, y);
  SeparatorReport r{{x, y}, {}, {}};
  for (Vertex z = 0; z < g.n; ++z) {
    if (z == x || z == y) continue;
    if (g.adjacent(x, z) != g.adjacent(y, z)) {
      r.separators.push_back(z);
      r.directions.push_back(SeparatorDirection::none);
    }
  }
  return r;
}

bool separates(const Tournament& t, Vertex z, Vertex x, Vertex y) {
  if (z == x || z == y) return false;
  return (t.beats(x, z) && t.beats(z, y)) || (t.beats(y, z) && t.beats(z, x));
}

SeparatorReport tournament_separators(const Tournament& t, Vertex x, Vertex y) {
  check_pair(t.n, x, y);
  SeparatorReport r{{x, y}, {}, {}};
  for (Vertex z = 0; z < t.n; ++z) {
    if (z == x || z == y) continue;
    if (t.beats(x, z) && t.beats(z, y)) {
      r.separators.push_back(z);
      r.directions.push_back(SeparatorDirection::x_to_y);
    } else if (t.beats(y, z) && t.beats(z, x)) {
      r.separators.push_back(z);
      r.directions.push_back(SeparatorDirection::y_to_x);
    }
  }
  return r;
}

std::string class_type_name(ClassType t) {
  switch (t) {
    case ClassType::complete: return "complete";
    case ClassType::null: return "null";
    case ClassType::mixed: return "mixed";
  }
  return "?";
}

bool approx_related(const Graph& g, const VertexSet& Y, Vertex x, Vertex y) {
  for (Vertex w : Y) {
    if (w == x || w == y) continue;
    if (g.adjacent(x, w) != g.adjacent(y, w)) return false;
  }
  return true;
}

ApproxClasses approx_classes(const Graph& g, VertexSet Y) {
  Y = normalize_set(std::move(Y));
  for (Vertex v : Y) check_vertex(g.n, v);
  DisjointSets ds(Y.size());
  for (std::size_t i = 0; i < Y.size(); ++i)
    for (std::size_t j = i + 1; j < Y.size(); ++j)
      if (approx_related(g, Y, Y[i], Y[j])) ds.unite(i, j);
  std::vector<VertexSet> blocks(Y.size());
  for (std::size_t i = 0; i < Y.size(); ++i) blocks[ds.find(i)].push_back(Y[i]);
  ApproxClasses out;
  out.partition = Partition::normalized(std::move(blocks));
  for (const auto& b : out.partition.blocks) {
    std::size_t edges = 0, pairs = b.size() * (b.size() - 1) / 2;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) edges += g.adjacent(b[i], b[j]);
    if (edges == 0)
      out.types.push_back(ClassType::null);
    else if (edges == pairs)
      out.types.push_back(ClassType::complete);
    else
      out.types.push_back(ClassType::mixed);
  }
  return out;
}

bool is_nice(const Tournament& t, const VertexSet& s) {
  std::vector<char> in(t.n, 0);
  for (Vertex v : s) in[v] = 1;
  for (Vertex z = 0; z < t.n; ++z) {
    if (in[z]) continue;
    bool beats_some = false, beaten_by_some = false;
    for (Vertex v : s) (t.beats(z, v) ? beats_some : beaten_by_some) = true;
    if (beats_some && beaten_by_some) return false;
  }
  return true;
}

bool is_transitive_subtournament(const Tournament& t, const VertexSet& s) {
  std::vector<std::size_t> scores;
  for (Vertex a : s) {
    std::size_t d = 0;
    for (Vertex b : s) d += t.beats(a, b);
    scores.push_back(d);
  }
  std::sort(scores.begin(), scores.end());
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] != i) return false;
  return true;
}

bool is_good(const Tournament& t, const VertexSet& s) {
  return is_transitive_subtournament(t, s) && is_nice(t, s);
}

Partition maximal_good_partition(const Tournament& t) {
  DisjointSets ds(t.n);
  for (Vertex x = 0; x < t.n; ++x)
    for (Vertex y = x + 1; y < t.n; ++y) {
      if (ds.find(x) == ds.find(y)) continue;
      if (least_module_is_transitive(t, x, y)) ds.unite(x, y);
    }
  return Partition::from_labels(ds.labels());
}

Equiv0Result equiv0_classes(const Graph& g, std::size_t threshold) {
  const std::size_t n = g.n;
  std::vector<std::vector<char>> related(n, std::vector<char>(n, 0));
  DisjointSets ds(n);
  for (Vertex x = 0; x < n; ++x) {
    related[x][x] = 1;
    for (Vertex y = x + 1; y < n; ++y) {
      std::size_t diff = 0;
      for (Vertex w = 0; w < n; ++w) diff += g.adjacent(x, w) != g.adjacent(y, w);
      if (diff <= threshold) {
        related[x][y] = related[y][x] = 1;
        ds.unite(x, y);
      }
    }
  }
  Equiv0Result r;
  const auto labels = ds.labels();
  for (Vertex x = 0; x < n && !r.closure_extended; ++x)
    for (Vertex y = 0; y < n; ++y)
      if (labels[x] == labels[y] && !related[x][y]) {
        r.closure_extended = true;
        break;
      }
  r.partition = Partition::from_labels(labels);
  return r;
}

Graph even_distance_graph(const Graph& g) {
  const std::size_t n = g.n;
  Graph out(n);
  for (Vertex s = 0; s < n; ++s) {
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::queue<Vertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w = 0; w < n; ++w)
        if (g.adjacent(v, w) && dist[w] == SIZE_MAX) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
    }
    for (Vertex w = 0; w < n; ++w) {
      if (dist[w] == SIZE_MAX) throw DomainError("even_distance_graph: input graph is disconnected");
      if (w > s && dist[w] % 2 == 0) out.add_edge(s, w);
    }
  }
  return out;
}

}  // namespace orbiteq
