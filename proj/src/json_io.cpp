#include "orbiteq/json_io.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace orbiteq {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json pairs(const std::vector<VertexPair>& ps) {
  Json out = Json::array();
  for (auto [a, b] : ps) out.push_back({a, b});
  return out;
}

std::vector<VertexPair> decode_pairs(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array of pairs");
  std::vector<VertexPair> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument(std::string(what) + " entries must be pairs");
    const auto a = p[0].get<Vertex>(), b = p[1].get<Vertex>();
    if (a >= n || b >= n) throw std::invalid_argument(std::string(what) + " pair out of range");
    out.emplace_back(a, b);
  }
  return out;
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json encode(const BigInt& b) {
  if (b >= 0 && b <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(b);
  return b.str();
}

BigInt decode_bigint(const Json& j) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& text = j.get_ref<const std::string&>();
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return BigInt(text);
  }
  throw std::invalid_argument("expected a non-negative integer or a decimal string");
}

Json encode(const Structure& s) {
  Json j;
  j["kind"] = kind_name(kind_of(s));
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Graph>) {
          j["n"] = x.n;
          j["edges"] = pairs(x.edges());
        } else if constexpr (std::is_same_v<T, Tournament>) {
          j["n"] = x.n;
          j["arcs"] = pairs(x.arcs());
        } else {
          j["n"] = x.size();
          j["edges"] = pairs(x.base.edges());
          j["order"] = pairs(x.order.pairs());
        }
      },
      s);
  return j;
}

Structure decode_structure(const Json& j) {
  const auto kind = parse_kind(get_as<std::string>(field(j, "kind"), "kind"));
  if (!kind) throw std::invalid_argument("unknown structure kind " + field(j, "kind").dump());
  const auto n = get_as<std::size_t>(field(j, "n"), "n");
  Structure s;
  switch (*kind) {
    case StructureKind::graph:
      s = Graph::from_edges(n, decode_pairs(field(j, "edges"), n, "edges"));
      break;
    case StructureKind::tournament:
      s = Tournament::from_arcs(n, decode_pairs(field(j, "arcs"), n, "arcs"));
      break;
    case StructureKind::ordered_graph: {
      OrderedGraph og(n);
      og.base = Graph::from_edges(n, decode_pairs(field(j, "edges"), n, "edges"));
      for (auto [a, b] : decode_pairs(field(j, "order"), n, "order")) og.order.set(a, b);
      s = std::move(og);
      break;
    }
  }
  if (auto bad = validate(s)) throw std::invalid_argument("invalid structure: " + *bad);
  return s;
}

Json encode(const OracleSpec& o) {
  Json j;
  j["kind"] = oracle_kind_name(o.kind);
  if (o.kind == OracleKind::generic_tournament) j["seed"] = o.seed;
  if (o.wrapped) j["structure"] = encode(*o.wrapped);
  return j;
}

OracleSpec decode_oracle(const Json& j) {
  const auto kind = get_as<std::string>(field(j, "kind"), "kind");
  if (kind == "finite") return OracleSpec::finite(decode_structure(field(j, "structure")));
  if (kind == "generic-tournament")
    return OracleSpec::generic_tournament(j.contains("seed") ? get_as<std::uint64_t>(j["seed"], "seed") : 0);
  return parse_oracle(kind);
}

Json encode(const Partition& p) { return Json{{"blocks", p.blocks}}; }

Partition decode_partition(const Json& j) {
  auto p = Partition::normalized(get_as<std::vector<VertexSet>>(field(j, "blocks"), "blocks"));
  std::set<Vertex> seen;
  for (const auto& b : p.blocks) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    for (Vertex v : b)
      if (!seen.insert(v).second) throw std::invalid_argument("partition blocks overlap at " + std::to_string(v));
  }
  return p;
}

Json encode(const SeparatorReport& r) {
  Json seps = Json::array();
  for (std::size_t i = 0; i < r.separators.size(); ++i) {
    const auto d = r.directions[i];
    seps.push_back({{"vertex", r.separators[i]},
                    {"direction", d == SeparatorDirection::none     ? "none"
                                  : d == SeparatorDirection::x_to_y ? "x->z->y"
                                                                    : "y->z->x"}});
  }
  return {{"pair", {r.pair.first, r.pair.second}}, {"separators", seps}};
}

Json encode(const ApproxClasses& c) {
  Json types = Json::array();
  for (auto t : c.types) types.push_back(class_type_name(t));
  return {{"blocks", c.partition.blocks}, {"types", types}};
}

Json encode(const AutomorphismSet& a) {
  return {{"order", encode(a.order)},
          {"generators", a.generators},
          {"base", a.base},
          {"basicOrbitLengths", a.basic_orbit_lengths},
          {"nodes", a.nodes}};
}

Json encode(const OrbitFamily& f) {
  return {{"on", orbit_domain_name(f.on)}, {"k", f.k}, {"orbits", f.orbits}};
}

OrbitFamily decode_orbit_family(const Json& j) {
  OrbitFamily f;
  const auto on = parse_orbit_domain(get_as<std::string>(field(j, "on"), "on"));
  if (!on) throw std::invalid_argument("unknown orbit domain " + field(j, "on").dump());
  f.on = *on;
  f.k = get_as<std::size_t>(field(j, "k"), "k");
  f.orbits = get_as<decltype(f.orbits)>(field(j, "orbits"), "orbits");
  return f;
}

Json encode(const OrbitEquivalence& e) {
  Json j{{"kmax", e.kmax}, {"subsetsEqual", e.subsets_equal}, {"tuplesEqual", e.tuples_equal}};
  j["subsetDivergence"] = e.subset_divergence ? Json(*e.subset_divergence) : Json(nullptr);
  j["tupleDivergence"] = e.tuple_divergence ? Json(*e.tuple_divergence) : Json(nullptr);
  return j;
}

Json encode(const RelationGroupResult& r) {
  return {{"isRelationGroup", r.is_relation_group}, {"orbitIndices", r.orbit_indices}, {"witness", r.witness}};
}

Json encode(const TransferReport& r) {
  Json per = Json::array();
  for (const auto& c : r.per_n)
    per.push_back({{"n", c.n},
                   {"pairs", c.pairs},
                   {"succeeded", c.succeeded},
                   {"noHFound", c.no_h_found},
                   {"noWitness", c.no_witness},
                   {"witnessViolations", c.witness_violations}});
  return {{"perN", per}, {"allSucceeded", r.all_succeeded()}};
}

Json encode(const IndiscernibilityProblem& p) {
  return {{"ambient", encode(p.ambient)}, {"A", p.A}, {"Q", p.Q}, {"n", p.n}};
}

IndiscernibilityProblem decode_problem(const Json& j) {
  IndiscernibilityProblem p;
  p.ambient = decode_structure(field(j, "ambient"));
  p.A = normalize_set(get_as<VertexSet>(field(j, "A"), "A"));
  p.Q = get_as<std::vector<std::vector<Vertex>>>(field(j, "Q"), "Q");
  p.n = get_as<std::size_t>(field(j, "n"), "n");
  return p;
}

Json encode(const IndiscernibleFamily& f) { return {{"P", f.P}, {"colorClassSize", f.color_class_size}}; }

IndiscernibleFamily decode_family(const Json& j) {
  IndiscernibleFamily f;
  f.P = get_as<std::vector<std::vector<Vertex>>>(field(j, "P"), "P");
  if (j.contains("colorClassSize")) f.color_class_size = get_as<std::size_t>(j["colorClassSize"], "colorClassSize");
  return f;
}

Json encode(const SizeBounds& b) {
  return {{"n", b.n},
          {"m", encode(b.m)},
          {"k", encode(b.k)},
          {"graphBound", encode(b.graph_bound)},
          {"tournamentM", encode(b.tournament_m)},
          {"tournamentSum", encode(b.tournament_sum)},
          {"tournamentClosedForm", encode(b.tournament_closed_form)},
          {"discrepancy", b.discrepancy}};
}

Json encode(const CertificateResult& c) {
  return {{"certificate", c.accepted ? "accepted" : "rejected"}, {"reason", c.reason}, {"targetsSplit", c.targets_split}};
}

Json encode(const RigidifyConfig& c) {
  return {{"oracle", encode(c.oracle)},
          {"targets", c.targets},
          {"budget", c.budget},
          {"probe", c.probe},
          {"vertexCap", c.aut.vertex_cap},
          {"nodeBudget", c.aut.node_budget},
          {"searchAutomorphisms", c.search_automorphisms}};
}

Json encode(const RigidifyReport& r) {
  Json ledger = Json::array();
  for (const auto& e : r.ledger) ledger.push_back({{"block", e.block}, {"members", e.members}, {"size", e.size}});
  Json j{{"structure", encode(r.built)},
         {"labels", r.labels},
         {"embeddedU", r.embedded_u},
         {"ledger", ledger},
         {"bounds", encode(r.bounds)},
         {"size", r.labels.size()},
         {"withinBound", r.within_bound},
         {"certificate", r.certificate},
         {"indiscernible", r.indiscernible},
         {"notes", r.notes}};
  if (!r.certificate_reason.empty()) j["certificateReason"] = r.certificate_reason;
  j["fixesU"] = r.fixes_u ? Json(*r.fixes_u) : Json(nullptr);
  j["autOrder"] = r.aut_order ? encode(*r.aut_order) : Json(nullptr);
  return j;
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace orbiteq
