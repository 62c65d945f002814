#include "orbiteq/permgroup.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "orbiteq/errors.hpp"

namespace orbiteq {

namespace {

using Mask = std::uint64_t;

Mask image_mask(Mask m, const Permutation& p) {
  Mask out = 0;
  while (m != 0) {
    const int i = std::countr_zero(m);
    m &= m - 1;
    out |= Mask{1} << p[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Vertex> mask_members(Mask m) {
  std::vector<Vertex> out;
  while (m != 0) {
    out.push_back(static_cast<Vertex>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

void require_degree(const PermutationGroup& g, std::size_t cap, const char* what) {
  if (g.degree() > cap)
    throw CapExceeded(std::string(what) + ": degree " + std::to_string(g.degree()) + " exceeds cap " +
                      std::to_string(cap));
}

// Canonically ordered domain with a key index for closure.
struct Domain {
  std::vector<std::vector<Vertex>> items;
  std::unordered_map<std::uint64_t, std::size_t> index;
  bool sorted_items = false;  // subsets: images are re-sorted
  std::size_t degree = 0;

  std::uint64_t key(const std::vector<Vertex>& v) const {
    std::uint64_t k = 0;
    if (sorted_items) {
      for (Vertex x : v) k |= std::uint64_t{1} << x;
      return k;
    }
    for (std::size_t i = v.size(); i-- > 0;) k = k * degree + v[i];
    return k;
  }
  void add(std::vector<Vertex> v) {
    index.emplace(key(v), items.size());
    items.push_back(std::move(v));
  }
};

Domain build_domain(std::size_t d, OrbitDomain on, std::size_t k, std::size_t cap) {
  Domain dom;
  dom.degree = d;
  auto over_cap = [&](const std::string& what) {
    throw CapExceeded("orbits: " + what + " exceeds cap " + std::to_string(cap));
  };
  if (on == OrbitDomain::points) k = 1;
  if (on == OrbitDomain::points || on == OrbitDomain::tuples) {
    long double total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<long double>(d);
    if (total > static_cast<long double>(cap)) over_cap(std::to_string(d) + "^" + std::to_string(k) + " tuples");
    std::vector<Vertex> t;
    std::vector<char> used(d, 0);
    auto rec = [&](auto&& self) -> void {
      if (t.size() == k) {
        dom.add(t);
        return;
      }
      for (Vertex v = 0; v < d; ++v) {
        if (used[v]) continue;
        used[v] = 1;
        t.push_back(v);
        self(self);
        t.pop_back();
        used[v] = 0;
      }
    };
    rec(rec);
    return dom;
  }
  if (d > 64) throw CapExceeded("orbits: subset actions need degree <= 64");
  dom.sorted_items = true;
  if (on == OrbitDomain::powerset) {
    if (d > 12) throw CapExceeded("orbits: power-set actions need degree <= 12");
    for (Mask m = 0; m < (Mask{1} << d); ++m) dom.add(mask_members(m));
    return dom;
  }
  long double total = 1;
  for (std::size_t i = 0; i < k; ++i) total = total * static_cast<long double>(d - i) / static_cast<long double>(i + 1);
  if (k > d) total = 0;
  if (total > static_cast<long double>(cap)) over_cap("C(" + std::to_string(d) + "," + std::to_string(k) + ") subsets");
  std::vector<Vertex> s;
  auto rec = [&](auto&& self, Vertex start) -> void {
    if (s.size() == k) {
      dom.add(s);
      return;
    }
    for (Vertex v = start; v < d; ++v) {
      s.push_back(v);
      self(self, v + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  return dom;
}

}  // namespace

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators) : degree_(degree) {
  for (auto& g : generators) {
    if (g.size() != degree || !is_bijection(g))
      throw std::invalid_argument("generator is not a permutation of degree " + std::to_string(degree));
    if (!is_identity(g)) generators_.push_back(std::move(g));
  }
  chain_.resize(degree_);
  for (std::size_t l = 0; l < degree_; ++l) {
    chain_[l].transversal.assign(degree_, std::nullopt);
    chain_[l].transversal[l] = identity_permutation(degree_);
  }
  for (const auto& g : generators_) extend(0, g);
}

PermutationGroup PermutationGroup::parse(std::string_view cycles, std::size_t degree) {
  return {degree, parse_generators(cycles, degree)};
}

PermutationGroup PermutationGroup::symmetric(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) {
    Permutation cycle(degree), swap = identity_permutation(degree);
    for (std::size_t i = 0; i < degree; ++i) cycle[i] = static_cast<Vertex>((i + 1) % degree);
    std::swap(swap[0], swap[1]);
    gens = {cycle, swap};
  }
  return {degree, gens};
}

std::optional<Permutation> PermutationGroup::sift(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < degree_; ++l) {
    const auto& t = chain_[l].transversal[g[l]];
    if (!t) return g;
    g = compose(g, inverse(*t));
  }
  return std::nullopt;
}

void PermutationGroup::extend(std::size_t level, const Permutation& g) {
  if (level >= degree_ || !sift(g, level)) return;
  Level& lv = chain_[level];
  lv.strong.push_back(g);
  // Grow the orbit of the base point under the enlarged generator set.
  std::deque<Vertex> queue;
  for (Vertex b = 0; b < degree_; ++b)
    if (lv.transversal[b]) queue.push_back(b);
  while (!queue.empty()) {
    const Vertex b = queue.front();
    queue.pop_front();
    for (const auto& s : lv.strong) {
      const Vertex c = s[b];
      if (!lv.transversal[c]) {
        lv.transversal[c] = compose(*lv.transversal[b], s);
        queue.push_back(c);
      }
    }
  }
  // Schreier generators t_b * s * t_{b^s}^{-1} lie in the next stabiliser.
  const auto strong = lv.strong;
  for (Vertex b = 0; b < degree_; ++b) {
    if (!chain_[level].transversal[b]) continue;
    for (const auto& s : strong) {
      const Permutation tb = *chain_[level].transversal[b];
      const Permutation tc = *chain_[level].transversal[s[b]];
      const Permutation schreier = compose(compose(tb, s), inverse(tc));
      if (!is_identity(schreier)) extend(level + 1, schreier);
    }
  }
}

BigInt PermutationGroup::order() const {
  BigInt r = 1;
  for (const auto& lv : chain_) {
    std::size_t len = 0;
    for (const auto& t : lv.transversal) len += t.has_value();
    r *= len;
  }
  return r;
}

bool PermutationGroup::contains(const Permutation& p) const {
  if (p.size() != degree_ || !is_bijection(p)) return false;
  return !sift(p, 0);
}

bool PermutationGroup::same_group(const PermutationGroup& other) const {
  if (degree_ != other.degree_ || order() != other.order()) return false;
  return std::all_of(other.generators_.begin(), other.generators_.end(), [&](const Permutation& g) { return contains(g); });
}

std::vector<Permutation> PermutationGroup::elements(std::size_t cap) const {
  if (order() > cap) throw CapExceeded("group of order " + order().str() + " exceeds element cap " + std::to_string(cap));
  std::vector<Permutation> current{identity_permutation(degree_)};
  for (std::size_t l = degree_; l-- > 0;) {
    std::vector<Permutation> next;
    for (const auto& t : chain_[l].transversal) {
      if (!t) continue;
      for (const auto& h : current) next.push_back(compose(h, *t));
    }
    current = std::move(next);
  }
  return current;
}

std::string orbit_domain_name(OrbitDomain d) {
  switch (d) {
    case OrbitDomain::points: return "points";
    case OrbitDomain::tuples: return "tuples";
    case OrbitDomain::subsets: return "subsets";
    case OrbitDomain::powerset: return "powerset";
  }
  return "?";
}

std::optional<OrbitDomain> parse_orbit_domain(const std::string& s) {
  if (s == "points") return OrbitDomain::points;
  if (s == "tuples" || s == "k-tuples") return OrbitDomain::tuples;
  if (s == "subsets" || s == "k-subsets") return OrbitDomain::subsets;
  if (s == "powerset" || s == "power-set") return OrbitDomain::powerset;
  return std::nullopt;
}

OrbitFamily orbits(const PermutationGroup& g, OrbitDomain on, std::size_t k, std::size_t cap) {
  Domain dom = build_domain(g.degree(), on, k, cap);
  OrbitFamily fam{on, on == OrbitDomain::points ? 1 : k, {}};
  std::vector<char> seen(dom.items.size(), 0);
  for (std::size_t start = 0; start < dom.items.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> members{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const auto& item = dom.items[members[head]];
      for (const auto& p : g.generators()) {
        std::vector<Vertex> img(item.size());
        for (std::size_t i = 0; i < item.size(); ++i) img[i] = p[item[i]];
        if (dom.sorted_items) std::sort(img.begin(), img.end());
        const std::size_t idx = dom.index.at(dom.key(img));
        if (!seen[idx]) {
          seen[idx] = 1;
          members.push_back(idx);
        }
      }
    }
    std::sort(members.begin(), members.end());
    std::vector<std::vector<Vertex>> orbit;
    for (std::size_t idx : members) orbit.push_back(dom.items[idx]);
    fam.orbits.push_back(std::move(orbit));
  }
  return fam;
}

OrbitEquivalence orbit_equivalent(const PermutationGroup& g, const PermutationGroup& h, std::size_t kmax) {
  if (g.degree() != h.degree()) throw std::invalid_argument("orbit_equivalent: degrees differ");
  OrbitEquivalence r;
  r.kmax = kmax;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const bool sub = orbits(g, OrbitDomain::subsets, k).orbits == orbits(h, OrbitDomain::subsets, k).orbits;
    const bool tup = orbits(g, OrbitDomain::tuples, k).orbits == orbits(h, OrbitDomain::tuples, k).orbits;
    r.subsets_equal.push_back(sub);
    r.tuples_equal.push_back(tup);
    if (!sub && !r.subset_divergence) r.subset_divergence = k;
    if (!tup && !r.tuple_divergence) r.tuple_divergence = k;
  }
  return r;
}

namespace {

std::vector<std::size_t> powerset_labels(const PermutationGroup& g) {
  const auto fam = orbits(g, OrbitDomain::powerset, 0);
  std::vector<std::size_t> label(std::size_t{1} << g.degree());
  for (std::size_t o = 0; o < fam.orbits.size(); ++o)
    for (const auto& s : fam.orbits[o]) {
      Mask m = 0;
      for (Vertex v : s) m |= Mask{1} << v;
      label[m] = o;
    }
  return label;
}

bool preserves_labels(const Permutation& p, const std::vector<std::size_t>& label) {
  for (Mask m = 0; m < label.size(); ++m)
    if (label[image_mask(m, p)] != label[m]) return false;
  return true;
}

}  // namespace

PermutationGroup orbit_closure(const PermutationGroup& g) {
  require_degree(g, 8, "orbit_closure");
  const std::size_t d = g.degree();
  const auto label = powerset_labels(g);
  std::vector<Permutation> gens = g.generators();
  PermutationGroup closure(d, gens);
  Permutation p = identity_permutation(d);
  do {
    if (closure.contains(p) || !preserves_labels(p, label)) continue;
    gens.push_back(p);
    closure = PermutationGroup(d, gens);
  } while (std::next_permutation(p.begin(), p.end()));
  return closure;
}

RelationGroupResult is_relation_group(const PermutationGroup& g, std::uint64_t candidate_cap) {
  require_degree(g, 6, "is_relation_group");
  const std::size_t d = g.degree();
  const auto fam = orbits(g, OrbitDomain::powerset, 0);
  const auto label = powerset_labels(g);
  const std::size_t m = fam.orbits.size();
  const std::size_t subsets = std::size_t{1} << d;

  std::vector<Mask> orbit_bits(m, 0);  // bit s set when subset mask s lies in the orbit
  for (Mask s = 0; s < subsets; ++s) orbit_bits[label[s]] |= Mask{1} << s;

  // Permutations outside <g>, each as its action on subset masks.
  std::vector<std::vector<std::uint8_t>> outside;
  Permutation p = identity_permutation(d);
  do {
    if (g.contains(p)) continue;
    std::vector<std::uint8_t> act(subsets);
    for (Mask s = 0; s < subsets; ++s) act[s] = static_cast<std::uint8_t>(image_mask(s, p));
    if (preserves_labels(p, label)) return {};  // p fixes every orbit union
    outside.push_back(std::move(act));
  } while (std::next_permutation(p.begin(), p.end()));

  auto stabilises = [&](const std::vector<std::uint8_t>& act, Mask family) {
    for (Mask rest = family; rest != 0; rest &= rest - 1)
      if (!(family >> act[static_cast<std::size_t>(std::countr_zero(rest))] & 1u)) return false;
    return true;
  };

  std::uint64_t tried = 0;
  std::size_t last_killer = 0;
  std::vector<std::size_t> pick;
  std::optional<std::vector<std::size_t>> found;
  auto rec = [&](auto&& self, std::size_t start, std::size_t size, Mask family) -> bool {
    if (pick.size() == size) {
      if (++tried > candidate_cap) throw CapExceeded("is_relation_group: candidate cap exceeded");
      if (!outside.empty() && stabilises(outside[last_killer], family)) return false;
      for (std::size_t i = 0; i < outside.size(); ++i)
        if (stabilises(outside[i], family)) {
          last_killer = i;
          return false;
        }
      found = pick;
      return true;
    }
    for (std::size_t o = start; o + (size - pick.size()) <= m; ++o) {
      pick.push_back(o);
      if (self(self, o + 1, size, family | orbit_bits[o])) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t size = 0; size <= m; ++size)
    if (rec(rec, 0, size, 0)) break;

  RelationGroupResult r;
  if (!found) return r;
  r.is_relation_group = true;
  r.orbit_indices = *found;
  Mask family = 0;
  for (std::size_t o : *found) family |= orbit_bits[o];
  for (Mask s = 0; s < subsets; ++s)
    if (family >> s & 1u) r.witness.push_back(mask_members(s));
  return r;
}

std::optional<std::vector<std::vector<Vertex>>> regular_powerset_orbit(const PermutationGroup& g) {
  require_degree(g, 12, "regular_powerset_orbit");
  const BigInt order = g.order();
  for (auto& orbit : orbits(g, OrbitDomain::powerset, 0).orbits)
    if (BigInt(orbit.size()) == order) return std::move(orbit);
  return std::nullopt;
}

bool TransferReport::all_succeeded() const {
  return std::all_of(per_n.begin(), per_n.end(), [](const TransferCounts& c) { return c.succeeded == c.pairs; });
}

TransferReport orbit_transfer_check(const PermutationGroup& g, const PermutationGroup& h, std::size_t nmax) {
  if (g.degree() != h.degree()) throw std::invalid_argument("orbit_transfer_check: degrees differ");
  require_degree(g, 12, "orbit_transfer_check");
  for (const auto& x : h.generators())
    if (!g.contains(x)) throw DomainError("orbit_transfer_check: H has a generator outside G");
  const std::size_t d = g.degree();
  const auto gel = g.elements(), hel = h.elements();

  auto maps_tuple = [](const Permutation& p, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (p[a[i]] != b[i]) return false;
    return true;
  };

  // Least V containing U whose setwise stabiliser in G fixes U pointwise;
  // sizes ascend, masks ascend within a size.
  std::unordered_map<Mask, std::optional<Mask>> witness_cache;
  auto witness = [&](Mask u) -> std::optional<Mask> {
    if (auto it = witness_cache.find(u); it != witness_cache.end()) return it->second;
    std::optional<Mask> best;
    const auto points = mask_members(u);
    for (int size = std::popcount(u); size <= static_cast<int>(d) && !best; ++size)
      for (Mask v = 0; v < (Mask{1} << d) && !best; ++v) {
        if ((v & u) != u || std::popcount(v) != size) continue;
        bool ok = true;
        for (const auto& x : gel) {
          if (image_mask(v, x) != v) continue;
          for (Vertex p : points)
            if (x[p] != p) ok = false;
          if (!ok) break;
        }
        if (ok) best = v;
      }
    witness_cache.emplace(u, best);
    return best;
  };

  TransferReport report;
  for (std::size_t n = 1; n <= nmax; ++n) {
    TransferCounts c;
    c.n = n;
    if (n <= d) {
      for (const auto& orbit : orbits(g, OrbitDomain::tuples, n).orbits)
        for (const auto& u1 : orbit)
          for (const auto& u2 : orbit) {
            if (u1 == u2) continue;
            ++c.pairs;
            const auto gi = std::find_if(gel.begin(), gel.end(), [&](const Permutation& x) { return maps_tuple(x, u1, u2); });
            Mask u = 0;
            for (Vertex p : u1) u |= Mask{1} << p;
            const auto w = witness(u);
            if (!w) ++c.no_witness;
            const Mask v = w ? *w : u;
            const Mask v2 = image_mask(v, *gi);
            bool success = false, violation = false;
            for (const auto& y : hel) {
              if (image_mask(v, y) != v2) continue;
              if (maps_tuple(y, u1, u2))
                success = true;
              else if (w)
                violation = true;
            }
            if (success)
              ++c.succeeded;
            else
              ++c.no_h_found;
            if (violation) ++c.witness_violations;
          }
    }
    report.per_n.push_back(c);
  }
  return report;
}

}  // namespace orbiteq
