#include "orbiteq/rigidify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "orbiteq/errors.hpp"
#include "orbiteq/indiscernible.hpp"

namespace orbiteq {

SizeBounds size_bounds(std::size_t n) {
  if (n == 0) throw std::invalid_argument("size_bounds needs n >= 1");
  SizeBounds b;
  b.n = n;
  b.m = BigInt(n) * (n - 1) / 2;
  b.k = (b.m + 1) * (b.m + 2) / 2 - 1;
  b.graph_bound = (2 * BigInt(n) + b.k * (2 * b.m + b.k + 5)) / 2;
  b.tournament_m = 2 * b.m;
  const unsigned M = static_cast<unsigned>(n * (n - 1));
  BigInt sum = 0;
  for (unsigned i = 2; i <= M + 1; ++i) sum += BigInt(1) << i;
  b.tournament_sum = BigInt(n) + sum;
  b.tournament_closed_form = BigInt(n) + (BigInt(1) << (n * n - n + 2)) - 2;
  b.discrepancy = b.tournament_sum != b.tournament_closed_form;
  return b;
}

CertificateResult certificate_check(const Tournament& t, const VertexSet& U) {
  for (Vertex u : U)
    if (u >= t.n) throw std::out_of_range("vertex " + std::to_string(u) + " out of range");
  const Partition p = maximal_good_partition(t);
  CertificateResult r;
  for (const auto& b : p.blocks) {
    std::size_t hits = 0;
    for (Vertex u : U) hits += std::binary_search(b.begin(), b.end(), u);
    if (hits > 1) r.targets_split = false;
  }
  std::map<std::size_t, std::size_t> first_block_of_size;
  std::vector<char> in_f(t.n, 0);
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const auto& b = p.blocks[i];
    if (b.size() < 2) continue;
    for (Vertex v : b) in_f[v] = 1;
    auto [it, fresh] = first_block_of_size.emplace(b.size(), i);
    if (!fresh) {
      r.reason = "maximal good sets starting at " + std::to_string(p.blocks[it->second].front()) + " and " +
                 std::to_string(b.front()) + " both have size " + std::to_string(b.size());
      return r;
    }
  }
  std::vector<Vertex> loose, fixed;
  for (Vertex v = 0; v < t.n; ++v) (in_f[v] ? fixed : loose).push_back(v);
  for (std::size_t i = 0; i < loose.size(); ++i)
    for (std::size_t j = i + 1; j < loose.size(); ++j) {
      const Vertex x = loose[i], y = loose[j];
      const bool split = std::any_of(fixed.begin(), fixed.end(), [&](Vertex f) { return separates(t, f, x, y); });
      if (!split) {
        r.reason = "vertices " + std::to_string(x) + " and " + std::to_string(y) +
                   " lie in singleton blocks and no vertex of a non-singleton block separates them";
        return r;
      }
    }
  r.accepted = true;
  r.reason = std::to_string(first_block_of_size.size()) + " non-singleton maximal good sets of distinct sizes; " +
             std::to_string(loose.size()) + " remaining vertices pairwise separated";
  return r;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Natural, Natural>& p) const {
    return std::hash<Natural>()(mix64(p.first) ^ p.second);
  }
};

// Oracle access for one construction: relation codes between chosen and
// candidate vertices, with comparability windows cached per vertex.
class World {
 public:
  explicit World(const RigidifyConfig& cfg) : cfg_(cfg), o_(cfg.oracle) {}

  bool tournament() const { return o_.is_tournament(); }
  bool ordered() const { return !tournament() && o_.kind != OracleKind::rado; }

  bool base(Natural a, Natural b) const { return tournament() ? query_arc(o_, a, b) : query_edge(o_, a, b); }

  Comparability compare(Natural a, Natural b) {
    if (!ordered()) return Comparability::incomparable;
    if (o_.kind == OracleKind::finite && o_.is_ordered()) return comparability(o_, a, b, cfg_.probe);
    return compare_windows(window(a), window(b), cfg_.probe);
  }

  // bit 0: adjacency or arc a->b; bit 1: a < b; bit 2: b < a.
  unsigned order_bits(Natural a, Natural b) {
    if (!ordered()) return 0;
    auto key = std::make_pair(a, b);
    if (auto it = order_cache_.find(key); it != order_cache_.end()) return it->second;
    const Comparability c = compare(a, b);
    const unsigned bits = c == Comparability::less ? 2u : c == Comparability::greater ? 4u : 0u;
    order_cache_.emplace(key, bits);
    order_cache_.emplace(std::make_pair(b, a), ((bits & 2u) << 1) | ((bits & 4u) >> 1));
    return bits;
  }

  unsigned rel(Natural a, Natural b) { return static_cast<unsigned>(base(a, b)) | order_bits(a, b); }

  void add(Natural v, int owner) {
    owner_[v] = owner;
    vertices_.push_back(v);
    max_id_ = std::max(max_id_, v);
  }
  void remove(Natural v) {
    owner_.erase(v);
    vertices_.erase(std::find(vertices_.begin(), vertices_.end(), v));
  }
  bool contains(Natural v) const { return owner_.count(v) != 0; }
  int owner(Natural v) const { return owner_.at(v); }
  const std::vector<Natural>& vertices() const { return vertices_; }
  Natural max_id() const { return max_id_; }
  const OracleSpec& oracle() const { return o_; }
  const RigidifyConfig& config() const { return cfg_; }

 private:
  const boost::dynamic_bitset<>& window(Natural v) {
    auto it = windows_.find(v);
    if (it == windows_.end()) it = windows_.emplace(v, neighborhood_window(o_, v, cfg_.probe)).first;
    return it->second;
  }

  const RigidifyConfig& cfg_;
  const OracleSpec& o_;
  std::unordered_map<Natural, boost::dynamic_bitset<>> windows_;
  std::unordered_map<std::pair<Natural, Natural>, unsigned, PairHash> order_cache_;
  std::unordered_map<Natural, int> owner_;
  std::vector<Natural> vertices_;
  Natural max_id_ = 0;
};

struct Block {
  std::string name;
  DiffQuery query;  // x, y and side; exclude and from are set per fill
  std::vector<Natural> members;
  std::optional<unsigned> pattern;  // rel(earlier, later) inside the block
  bool swapped = false;              // drawn from the reverse difference
};

using Predicate = std::function<bool(Natural)>;

// Greedy selection of mutually indiscernible blocks. A candidate joins block B
// when it relates to every vertex outside B exactly as B's first member does
// and to every earlier member of B by B's pattern; a block's first member
// must relate uniformly to each other block.
class Builder {
 public:
  explicit Builder(World& w) : w_(w) {}

  std::size_t add_block(Block b) {
    blocks_.push_back(std::move(b));
    return blocks_.size() - 1;
  }
  Block& block(std::size_t i) { return blocks_[i]; }
  const std::vector<Block>& blocks() const { return blocks_; }

  void fill(std::size_t bi, std::size_t target, const Predicate& first_ok = {}) {
    if (blocks_[bi].members.size() >= target) return;
    DiffQuery q = blocks_[bi].query;
    q.exclude = w_.vertices();
    q.from = w_.tournament() ? w_.max_id() + 1 : 0;
    DifferenceStream stream(w_.oracle(), q, w_.config().budget);
    while (blocks_[bi].members.size() < target) {
      Natural c;
      try {
        c = stream.next();
      } catch (const BudgetExhausted& e) {
        throw BudgetExhausted("block " + blocks_[bi].name + " stuck at " + std::to_string(blocks_[bi].members.size()) +
                              " of " + std::to_string(target) + " members: " + e.what());
      }
      if (w_.contains(c) || !accepts(bi, c)) continue;
      Block& b = blocks_[bi];
      if (b.members.empty() && first_ok && !first_ok(c)) continue;
      if (b.members.size() == 1) b.pattern = w_.rel(b.members[0], c);
      b.members.push_back(c);
      w_.add(c, static_cast<int>(bi));
    }
  }

  // For incomparable pairs both differences are infinite; try the reverse one
  // when the preferred side runs out of budget.
  void fill_either(std::size_t bi, std::size_t target, const Predicate& first_ok, bool may_swap) {
    try {
      fill(bi, target, first_ok);
    } catch (const BudgetExhausted&) {
      if (!may_swap) throw;
      drop(bi);
      std::swap(blocks_[bi].query.x, blocks_[bi].query.y);
      blocks_[bi].swapped = true;
      fill(bi, target, first_ok);
    }
  }

  // Grows a block, undoing the additions if the target is out of reach.
  bool try_fill(std::size_t bi, std::size_t target) {
    const std::size_t before = blocks_[bi].members.size();
    try {
      fill(bi, target);
      return true;
    } catch (const BudgetExhausted&) {
      auto& mem = blocks_[bi].members;
      for (std::size_t k = before; k < mem.size(); ++k) w_.remove(mem[k]);
      mem.resize(before);
      if (before < 2) blocks_[bi].pattern.reset();
      return false;
    }
  }

  void drop(std::size_t bi) {
    for (Natural v : blocks_[bi].members) w_.remove(v);
    blocks_[bi].members.clear();
    blocks_[bi].pattern.reset();
  }

 private:
  bool accepts(std::size_t bi, Natural c) {
    const Block& b = blocks_[bi];
    if (b.members.empty()) {
      for (std::size_t j = 0; j < blocks_.size(); ++j) {
        if (j == bi || blocks_[j].members.empty()) continue;
        const auto& other = blocks_[j].members;
        const unsigned ref = w_.rel(c, other[0]);
        for (std::size_t k = 1; k < other.size(); ++k)
          if (w_.rel(c, other[k]) != ref) return false;
      }
      return true;
    }
    const Natural first = b.members[0];
    // Cheap base relation first; comparability windows only for survivors.
    for (Natural v : w_.vertices())
      if (w_.owner(v) != static_cast<int>(bi) && w_.base(c, v) != w_.base(first, v)) return false;
    for (Natural m : b.members)
      if (b.pattern && w_.base(m, c) != static_cast<bool>(*b.pattern & 1u)) return false;
    if (w_.ordered()) {
      for (Natural v : w_.vertices())
        if (w_.owner(v) != static_cast<int>(bi) && w_.order_bits(c, v) != w_.order_bits(first, v)) return false;
    }
    for (Natural m : b.members)
      if (b.pattern && w_.rel(m, c) != *b.pattern) return false;
    return true;
  }

  World& w_;
  std::vector<Block> blocks_;
};

std::vector<Natural> checked_targets(const RigidifyConfig& cfg) {
  if (cfg.targets.empty()) throw std::invalid_argument("rigidify needs at least one target");
  if (cfg.budget == 0) throw std::invalid_argument("rigidify needs budget > 0");
  if (cfg.probe == 0) throw std::invalid_argument("rigidify needs probe > 0");
  std::vector<Natural> u = cfg.targets;
  std::sort(u.begin(), u.end());
  if (std::adjacent_find(u.begin(), u.end()) != u.end())
    throw std::invalid_argument("duplicate target " + std::to_string(*std::adjacent_find(u.begin(), u.end())));
  if (auto n = cfg.oracle.universe())
    for (Natural x : u)
      if (x >= *n) throw DomainError("target " + std::to_string(x) + " outside the finite oracle");
  return u;
}

std::string pair_name(const char* prefix, std::size_t i, std::size_t j) {
  return std::string(prefix) + std::to_string(i) + (i > 9 || j > 9 ? "_" : "") + std::to_string(j);
}

std::string str(const BigInt& b) { return b.str(); }

// Numbers the chosen vertices by increasing oracle label and fills the report's
// labels, embedded targets and ledger.
std::unordered_map<Natural, Vertex> index_vertices(World& w, const std::vector<Natural>& U, RigidifyReport& r) {
  r.labels = w.vertices();
  std::sort(r.labels.begin(), r.labels.end());
  std::unordered_map<Natural, Vertex> id;
  for (Vertex i = 0; i < r.labels.size(); ++i) id[r.labels[i]] = i;
  for (Natural u : U) r.embedded_u.push_back(id.at(u));
  return id;
}

Structure build_structure(World& w, const std::vector<Natural>& labels) {
  const std::size_t n = labels.size();
  if (w.tournament()) {
    Tournament t(n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j) {
        if (w.base(labels[i], labels[j]))
          t.orient(i, j);
        else
          t.orient(j, i);
      }
    return t;
  }
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (w.base(labels[i], labels[j])) g.add_edge(i, j);
  if (!w.ordered()) {
    OrderedGraph og(n);
    og.base = std::move(g);
    return og;
  }
  OrderedGraph og(n);
  og.base = std::move(g);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (i != j && (w.order_bits(labels[i], labels[j]) & 2u)) og.order.set(i, j);
  return og;
}

IndiscernibleFamily family_of(const std::vector<const Block*>& blocks, const std::unordered_map<Natural, Vertex>& id) {
  IndiscernibleFamily f;
  for (const Block* b : blocks) {
    std::vector<Vertex> ids;
    for (Natural v : b->members) ids.push_back(id.at(v));
    f.P.push_back(std::move(ids));
  }
  return f;
}

void run_search(const RigidifyConfig& cfg, RigidifyReport& r) {
  if (!cfg.search_automorphisms) return;
  const auto aut = automorphisms(r.built, cfg.aut);
  r.aut_order = aut.order;
  const Partition orbits = orbits_of(order_of(r.built), aut.generators);
  bool fixed = true;
  for (Vertex u : r.embedded_u)
    if (orbits.blocks[orbits.block_of(u)].size() != 1) fixed = false;
  r.fixes_u = fixed;
}

RigidifyReport trivial_report(World& w, const std::vector<Natural>& U, const RigidifyConfig& cfg) {
  RigidifyReport r;
  for (Natural u : U) w.add(u, -1);
  index_vertices(w, U, r);
  r.built = build_structure(w, r.labels);
  r.bounds = size_bounds(U.size());
  r.indiscernible = true;
  r.notes.push_back("single target: no pairs to separate, V = U");
  run_search(cfg, r);
  return r;
}

}  // namespace

RigidifyReport rigidify_tournament(const RigidifyConfig& cfg) {
  if (!cfg.oracle.is_tournament()) throw DomainError("rigidify tournament needs a tournament oracle");
  const auto U = checked_targets(cfg);
  const std::size_t n = U.size();
  World w(cfg);
  if (n == 1) {
    auto r = trivial_report(w, U, cfg);
    r.within_bound = true;
    const auto cert = certificate_check(std::get<Tournament>(r.built), r.embedded_u);
    r.certificate = cert.accepted ? "accepted" : "rejected";
    r.certificate_reason = cert.reason;
    return r;
  }
  for (Natural u : U) w.add(u, -1);
  Builder builder(w);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Block b;
      b.name = pair_name("V_", i, j);
      b.query.x = U[i];
      b.query.y = U[j];
      b.query.side = DiffSide::out_x_minus_y;
      builder.add_block(std::move(b));
      sizes.push_back(std::size_t{1} << (sizes.size() + 2));
    }
  for (std::size_t bi = 0; bi < sizes.size(); ++bi) builder.fill(bi, sizes[bi]);

  RigidifyReport r;
  const auto id = index_vertices(w, U, r);
  r.built = build_structure(w, r.labels);
  r.bounds = size_bounds(n);
  r.within_bound = BigInt(r.labels.size()) <= r.bounds.tournament_sum;
  std::vector<const Block*> all;
  for (const auto& b : builder.blocks()) {
    LedgerEntry e{b.name, {}, b.members.size()};
    for (Natural v : b.members) e.members.push_back(id.at(v));
    r.ledger.push_back(std::move(e));
    all.push_back(&b);
  }
  r.indiscernible = !verify(r.built, r.embedded_u, family_of(all, id)).has_value();
  const auto cert = certificate_check(std::get<Tournament>(r.built), r.embedded_u);
  r.certificate = cert.accepted ? "accepted" : "rejected";
  r.certificate_reason = cert.reason;
  if (r.bounds.discrepancy)
    r.notes.push_back("vertex count " + std::to_string(r.labels.size()) + " follows the summation " +
                      str(r.bounds.tournament_sum) + "; the closed form gives " +
                      str(r.bounds.tournament_closed_form));
  run_search(cfg, r);
  return r;
}

RigidifyReport rigidify_ordered_graph(const RigidifyConfig& cfg) {
  if (cfg.oracle.is_tournament()) throw DomainError("rigidify ordered-graph needs a graph oracle");
  const auto U = checked_targets(cfg);
  const std::size_t n = U.size();
  const std::size_t m = n * (n - 1) / 2;
  World w(cfg);
  if (n == 1) {
    auto r = trivial_report(w, U, cfg);
    r.within_bound = true;
    r.certificate = "not-applicable";
    return r;
  }
  for (Natural u : U) w.add(u, -1);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (w.compare(U[i], U[j]) == Comparability::unknown)
        throw ComparabilityUnknown("comparability of targets " + std::to_string(U[i]) + " and " +
                                   std::to_string(U[j]) + " is unknown at probe " + std::to_string(cfg.probe) +
                                   "; raise --probe");

  auto separated = [&](Natural a, Natural b, const std::vector<Natural>& among, Natural extra) {
    auto differs = [&](Natural z) { return z != a && z != b && w.base(a, z) != w.base(b, z); };
    return differs(extra) || std::any_of(among.begin(), among.end(), differs);
  };

  Builder builder(w);
  RigidifyReport r;
  std::vector<std::size_t> p_blocks;
  std::vector<std::pair<std::size_t, std::size_t>> p_pairs;

  // Separating blocks, two members each for now.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Block b;
      b.name = pair_name("P_", i, j);
      const Comparability c = w.compare(U[i], U[j]);
      const bool j_first = c == Comparability::greater;  // u_j < u_i
      b.query.x = j_first ? U[j] : U[i];
      b.query.y = j_first ? U[i] : U[j];
      b.query.side = DiffSide::gamma_x_minus_y;
      const std::size_t bi = builder.add_block(std::move(b));
      auto apart_from_blocks = [&](Natural cand) {
        for (std::size_t other : p_blocks) {
          const auto& mem = builder.block(other).members;
          if (!mem.empty() && !separated(cand, mem[0], w.vertices(), cand)) return false;
        }
        return true;
      };
      try {
        builder.fill_either(bi, 2, apart_from_blocks, c == Comparability::incomparable);
      } catch (const BudgetExhausted&) {
        builder.drop(bi);
        bool already = false;
        for (std::size_t other : p_blocks)
          for (Natural z : builder.block(other).members)
            if (w.base(U[i], z) != w.base(U[j], z)) already = true;
        if (!already) throw;
        r.notes.push_back(builder.block(bi).name + " deleted: its pair is separated by an earlier block");
        continue;
      }
      p_blocks.push_back(bi);
      p_pairs.emplace_back(i, j);
    }

  // ≈_W classes: each must be one P block, possibly with one target.
  auto approx_on = [&](const std::vector<Natural>& Y) {
    std::vector<Natural> labels = Y;
    std::sort(labels.begin(), labels.end());
    Graph g(labels.size());
    for (Vertex a = 0; a < labels.size(); ++a)
      for (Vertex b = a + 1; b < labels.size(); ++b)
        if (w.base(labels[a], labels[b])) g.add_edge(a, b);
    VertexSet all(labels.size());
    for (Vertex a = 0; a < labels.size(); ++a) all[a] = a;
    auto classes = approx_classes(g, all);
    std::vector<std::vector<Natural>> out;
    for (const auto& cls : classes.partition.blocks) {
      std::vector<Natural> members;
      for (Vertex v : cls) members.push_back(labels[v]);
      out.push_back(std::move(members));
    }
    return std::make_pair(out, classes.types);
  };

  struct ClassInfo {
    std::optional<std::size_t> block;
    std::optional<Natural> target;
    std::size_t size = 0;
    ClassType type = ClassType::null;
  };
  auto describe_classes = [&](const std::vector<Natural>& Y, const char* where) {
    auto [classes, types] = approx_on(Y);
    std::vector<ClassInfo> info;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      ClassInfo ci;
      ci.size = classes[c].size();
      ci.type = types[c];
      std::set<std::size_t> owners;
      for (Natural v : classes[c]) {
        const int o = w.owner(v);
        if (o < 0) {
          if (ci.target) throw DomainError(std::string(where) + ": two targets share a class");
          ci.target = v;
        } else {
          owners.insert(static_cast<std::size_t>(o));
        }
      }
      if (owners.size() > 1)
        throw DomainError(std::string(where) + ": blocks " + builder.block(*owners.begin()).name + " and " +
                          builder.block(*owners.rbegin()).name + " share a class");
      if (!owners.empty()) {
        ci.block = *owners.begin();
        if (ci.size != builder.block(*ci.block).members.size() + (ci.target ? 1 : 0))
          throw DomainError(std::string(where) + ": class of " + builder.block(*ci.block).name +
                            " holds vertices outside the block");
      }
      info.push_back(ci);
    }
    return info;
  };

  // Sizes: classes without a target take 2,3,..., classes with one take the
  // following block sizes, so all class sizes differ.
  {
    auto info = describe_classes(w.vertices(), "W");
    std::vector<std::size_t> plain, with_target;
    for (const auto& ci : info) {
      if (!ci.block) continue;
      (ci.target ? with_target : plain).push_back(*ci.block);
    }
    std::sort(plain.begin(), plain.end());
    std::sort(with_target.begin(), with_target.end());
    // Each size goes to the first pending block that can reach it.
    std::size_t next = 2;
    for (auto list : {&plain, &with_target})
      while (!list->empty()) {
        auto it = std::find_if(list->begin(), list->end(), [&](std::size_t bi) { return builder.try_fill(bi, next); });
        if (it == list->end())
          throw BudgetExhausted("no separating block can grow to " + std::to_string(next) + " members within budget " +
                                std::to_string(cfg.budget));
        r.notes.push_back(builder.block(*it).name + " sized " + std::to_string(next));
        list->erase(it);
        ++next;
      }
  }

  const std::vector<Natural> W = w.vertices();
  const auto w_info = describe_classes(W, "W");
  {
    std::set<std::size_t> seen;
    for (const auto& ci : w_info)
      if (ci.size > 1 && !seen.insert(ci.size).second)
        throw DomainError("W: two ≈_W classes of size " + std::to_string(ci.size));
  }

  // Huge blocks S_cu for targets sharing a class with a block.
  std::vector<std::size_t> s_blocks;
  std::vector<std::pair<Natural, Natural>> s_pairs;  // (c, u)
  for (const auto& ci : w_info) {
    if (!ci.block || !ci.target) continue;
    const Natural u = *ci.target;
    const bool complete = ci.type == ClassType::complete;
    for (Natural c : builder.block(*ci.block).members) {
      const Comparability cu = w.compare(c, u);  // less: c < u
      Block b;
      b.query.side = DiffSide::gamma_x_minus_y;
      if (!complete && cu != Comparability::greater) {
        b.query.x = c;  // Γ(c) \ (Γ(u) ∪ W)
        b.query.y = u;
      } else if (complete && cu != Comparability::less) {
        b.query.x = u;  // Γ(u) \ (Γ(c) ∪ W)
        b.query.y = c;
      } else {
        r.notes.push_back("no S block for target " + std::to_string(u) + " and " + std::to_string(c) +
                          ": the target is extreme in its class");
        continue;
      }
      b.name = "S";
      const std::size_t bi = builder.add_block(std::move(b));
      auto apart = [&](Natural cand) {
        for (std::size_t other : s_blocks) {
          const auto& mem = builder.block(other).members;
          if (!mem.empty() && !separated(cand, mem[0], w.vertices(), cand)) return false;
        }
        return true;
      };
      builder.fill_either(bi, 2, apart, cu == Comparability::incomparable);
      s_blocks.push_back(bi);
      s_pairs.emplace_back(c, u);
    }
  }

  if (!s_blocks.empty()) {
    auto info = describe_classes(w.vertices(), "V");
    std::set<std::size_t> taken;
    std::map<std::size_t, std::size_t> extra;  // S block -> class vertices outside it
    for (const auto& ci : info) {
      const bool is_s = ci.block && std::find(s_blocks.begin(), s_blocks.end(), *ci.block) != s_blocks.end();
      if (is_s)
        extra[*ci.block] = ci.size - builder.block(*ci.block).members.size();
      else if (ci.size > 1)
        taken.insert(ci.size);
    }
    std::vector<std::size_t> order = s_blocks;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return extra[a] < extra[b]; });
    std::set<std::size_t> block_sizes;
    for (const auto& b : builder.blocks())
      if (b.members.size() > 1) block_sizes.insert(b.members.size());
    std::size_t next = m + 2;
    for (std::size_t bi : order) {
      std::size_t cls = std::max(next, m + 2 + extra[bi]);
      while (taken.count(cls) || block_sizes.count(cls - extra[bi])) ++cls;
      taken.insert(cls);
      block_sizes.insert(cls - extra[bi]);
      next = cls + 1;
      builder.fill(bi, cls - extra[bi]);
      r.notes.push_back("S block for (" + std::to_string(s_pairs[static_cast<std::size_t>(
                            std::find(s_blocks.begin(), s_blocks.end(), bi) - s_blocks.begin())].first) +
                        "," +
                        std::to_string(s_pairs[static_cast<std::size_t>(
                            std::find(s_blocks.begin(), s_blocks.end(), bi) - s_blocks.begin())].second) +
                        ") sized " + std::to_string(cls - extra[bi]) + " in a class of " + std::to_string(cls));
    }
  }

  const auto id = index_vertices(w, U, r);
  r.built = build_structure(w, r.labels);
  r.bounds = size_bounds(n);
  r.within_bound = BigInt(r.labels.size()) <= r.bounds.graph_bound;
  r.certificate = "not-applicable";

  std::vector<const Block*> ps, ss;
  for (std::size_t bi : p_blocks) ps.push_back(&builder.block(bi));
  for (std::size_t k = 0; k < s_blocks.size(); ++k) {
    Block& b = builder.block(s_blocks[k]);
    b.name = "S_c" + std::to_string(id.at(s_pairs[k].first)) + "_u" + std::to_string(id.at(s_pairs[k].second));
    ss.push_back(&b);
  }
  for (const auto* list : {&ps, &ss})
    for (const Block* b : *list) {
      LedgerEntry e{b->name, {}, b->members.size()};
      for (Natural v : b->members) e.members.push_back(id.at(v));
      r.ledger.push_back(std::move(e));
    }
  VertexSet w_ids;
  for (Natural v : W) w_ids.push_back(id.at(v));
  const bool p_ok = !verify(r.built, r.embedded_u, family_of(ps, id)).has_value();
  const bool s_ok = ss.empty() || !verify(r.built, normalize_set(w_ids), family_of(ss, id)).has_value();
  r.indiscernible = p_ok && s_ok;
  {
    std::string cls = "≈_W classes:";
    for (const auto& ci : w_info) {
      if (ci.size < 2) continue;
      cls += " " + builder.block(*ci.block).name + (ci.target ? "+u" + std::to_string(id.at(*ci.target)) : "") +
             "(" + std::to_string(ci.size) + "," + class_type_name(ci.type) + ")";
    }
    r.notes.push_back(cls);
  }
  run_search(cfg, r);
  return r;
}

}  // namespace orbiteq
