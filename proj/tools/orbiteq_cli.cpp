#include <fstream>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orbiteq/errors.hpp"
#include "orbiteq/json_io.hpp"

using namespace orbiteq;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string oracle = "rado";
  std::string targets;
  std::string set;
  std::optional<std::size_t> equiv0;
  std::uint64_t budget = kDefaultBudget;
  std::size_t probe = 512;
  std::size_t kmax = 3;
  std::size_t k = 1;
  std::size_t nmax = 2;
  std::size_t n = 2;
  std::size_t degree = 0;
  std::string on = "points";
  std::string group;
  std::string other;
  std::string in;
  std::string out;
  std::string mode = "brute";
  std::string construction;
  std::size_t vertex_cap = AutOptions{}.vertex_cap;
  std::uint64_t node_budget = AutOptions{}.node_budget;
  bool no_aut = false;
  bool verbose = false;
};

std::vector<Natural> parse_csv(const std::string& text, const char* flag) {
  std::vector<Natural> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": not a natural number: \"" + item + "\"");
    }
  }
  return out;
}

VertexSet parse_vertex_csv(const std::string& text, const char* flag) {
  VertexSet out;
  for (Natural v : parse_csv(text, flag)) out.push_back(static_cast<Vertex>(v));
  return normalize_set(out);
}

Json read_json(const std::string& path) {
  if (path.empty()) throw UsageError("--in: an input file is required");
  std::ifstream f;
  std::istream* src = &std::cin;
  if (path != "-") {
    f.open(path);
    if (!f) throw UsageError("--in: cannot open " + path);
    src = &f;
  }
  try {
    return Json::parse(*src);
  } catch (const Json::parse_error& e) {
    throw UsageError("--in: " + std::string(e.what()));
  }
}

// A bare structure, or any payload carrying one under "structure".
Structure read_structure(const Json& j) {
  if (j.contains("result") && j["result"].is_object() && j["result"].contains("structure"))
    return decode_structure(j["result"]["structure"]);
  if (j.contains("structure")) return decode_structure(j["structure"]);
  return decode_structure(j);
}

VertexSet read_targets(const Json& j) {
  const Json* r = &j;
  if (j.contains("result") && j["result"].is_object()) r = &j["result"];
  if (r->contains("embeddedU")) return normalize_set((*r)["embeddedU"].get<VertexSet>());
  return {};
}

PermutationGroup group_of(const std::string& cycles, std::size_t degree, const char* flag) {
  if (degree == 0) throw UsageError("--degree: must be positive");
  try {
    return PermutationGroup::parse(cycles, degree);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

OracleSpec oracle_of(const std::string& text) {
  try {
    return parse_oracle(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--oracle: ") + e.what());
  }
}

AutOptions aut_options(const Options& o) { return {o.vertex_cap, o.node_budget}; }

Json run(const std::string& verb, const Options& o, Json& config) {
  if (verb == "bounds") {
    config["n"] = o.n;
    if (o.n == 0) throw UsageError("--n: must be at least 1");
    return encode(size_bounds(o.n));
  }
  if (verb == "sample") {
    const auto oracle = oracle_of(o.oracle);
    const auto points = parse_csv(o.targets, "--targets");
    if (points.empty()) throw UsageError("--targets: at least one vertex is required");
    config["oracle"] = encode(oracle);
    config["targets"] = points;
    config["probe"] = o.probe;
    const auto s = sample_structure(oracle, points, o.probe);
    return {{"structure", encode(s.structure)}, {"labels", s.labels}};
  }
  if (verb == "rigidify") {
    RigidifyConfig cfg;
    cfg.oracle = oracle_of(o.oracle);
    cfg.targets = parse_csv(o.targets, "--targets");
    cfg.budget = o.budget;
    cfg.probe = o.probe;
    cfg.aut = aut_options(o);
    cfg.search_automorphisms = !o.no_aut;
    if (cfg.targets.empty()) throw UsageError("--targets: at least one vertex is required");
    if (cfg.budget == 0) throw UsageError("--budget: must be positive");
    if (cfg.probe == 0) throw UsageError("--probe: must be positive");
    config = encode(cfg);
    config["construction"] = o.construction;
    if (o.construction == "tournament") return encode(rigidify_tournament(cfg));
    if (o.construction == "ordered-graph") return encode(rigidify_ordered_graph(cfg));
    throw UsageError("rigidify: construction must be \"tournament\" or \"ordered-graph\"");
  }
  if (verb == "verify") {
    const Json in = read_json(o.in);
    const Structure s = read_structure(in);
    VertexSet U = o.targets.empty() ? read_targets(in) : parse_vertex_csv(o.targets, "--targets");
    config["in"] = o.in;
    config["mode"] = o.mode;
    config["targets"] = U;
    if (o.mode == "certificate") {
      const auto* t = std::get_if<Tournament>(&s);
      if (!t) throw UsageError("--mode certificate: needs a tournament");
      const auto c = certificate_check(*t, U);
      Json r = encode(c);
      r["accepted"] = c.accepted;
      return r;
    }
    if (o.mode == "brute") {
      config["vertexCap"] = o.vertex_cap;
      config["nodeBudget"] = o.node_budget;
      const auto aut = automorphisms(s, aut_options(o));
      const bool rigid = aut.order == 1;
      Json r{{"order", encode(aut.order)}, {"rigid", rigid}, {"accepted", rigid},
             {"certificate", rigid ? "accepted" : "rejected"}};
      if (!U.empty()) {
        const auto orbits = orbits_of(order_of(s), aut.generators);
        bool fixed = true;
        for (Vertex u : U) fixed = fixed && orbits.blocks[orbits.block_of(u)].size() == 1;
        r["fixesU"] = fixed;
      }
      return r;
    }
    throw UsageError("--mode: must be \"brute\" or \"certificate\"");
  }
  if (verb == "aut") {
    const Structure s = read_structure(read_json(o.in));
    config["in"] = o.in;
    config["vertexCap"] = o.vertex_cap;
    config["nodeBudget"] = o.node_budget;
    const auto aut = automorphisms(s, aut_options(o));
    Json r = encode(aut);
    r["orbits"] = encode(orbits_of(order_of(s), aut.generators));
    return r;
  }
  if (verb == "maxgood") {
    const Structure s = read_structure(read_json(o.in));
    config["in"] = o.in;
    const auto* t = std::get_if<Tournament>(&s);
    if (!t) throw UsageError("--in: maxgood needs a tournament");
    return encode(maximal_good_partition(*t));
  }
  if (verb == "approx") {
    const Structure s = read_structure(read_json(o.in));
    config["in"] = o.in;
    const Graph* g = std::get_if<Graph>(&s);
    if (const auto* og = std::get_if<OrderedGraph>(&s)) g = &og->base;
    if (!g) throw UsageError("--in: approx needs a graph");
    VertexSet Y;
    if (o.set.empty())
      for (Vertex v = 0; v < g->n; ++v) Y.push_back(v);
    else
      Y = parse_vertex_csv(o.set, "--set");
    config["set"] = Y;
    Json result = encode(approx_classes(*g, Y));
    if (o.equiv0) {
      config["equiv0"] = *o.equiv0;
      const auto e = equiv0_classes(*g, *o.equiv0);
      result["equiv0"] = {{"threshold", *o.equiv0}, {"partition", encode(e.partition)}, {"closureExtended", e.closure_extended}};
    }
    return result;
  }
  if (verb == "indisc") {
    const auto problem = decode_problem(read_json(o.in));
    config["in"] = o.in;
    const auto family = extract(problem);
    const auto bad = verify(problem.ambient, problem.A, family);
    Json r = encode(family);
    r["verified"] = !bad.has_value();
    if (bad) r["violation"] = *bad;
    Json verdicts = Json::array();
    if (!bad)
      for (std::size_t j = 0; j < family.P.size(); ++j) {
        const auto v = totally_ordered_or_free(problem.ambient, problem.A, family, j);
        verdicts.push_back({{"block", j},
                            {"type", v.type == BlockType::ordered_by_relation ? "ordered" : "free"},
                            {"relation", v.relation.empty() ? Json(nullptr) : Json(v.relation)}});
      }
    r["blocks"] = verdicts;
    return r;
  }

  const PermutationGroup g = group_of(o.group, o.degree, "--group");
  config["group"] = o.group;
  config["degree"] = o.degree;
  if (verb == "orbits") {
    const auto on = parse_orbit_domain(o.on);
    if (!on) throw UsageError("--on: must be points, tuples, subsets or powerset");
    config["on"] = o.on;
    config["k"] = o.k;
    return encode(orbits(g, *on, o.k));
  }
  if (verb == "closure") {
    const auto c = orbit_closure(g);
    std::vector<std::string> gens;
    for (const auto& p : c.generators()) gens.push_back(to_cycle_string(p));
    return {{"order", encode(c.order())}, {"generators", gens}, {"orbitClosed", c.same_group(g)}};
  }
  if (verb == "relgroup") return encode(is_relation_group(g));
  if (verb == "regorbit") {
    const auto orbit = regular_powerset_orbit(g);
    return {{"exists", orbit.has_value()}, {"orbit", orbit ? Json(*orbit) : Json(nullptr)}};
  }
  const PermutationGroup h = group_of(o.other, o.degree, "--other");
  config["other"] = o.other;
  if (verb == "orbit-eq") {
    config["kmax"] = o.kmax;
    return encode(orbit_equivalent(g, h, o.kmax));
  }
  if (verb == "transfer") {
    config["nmax"] = o.nmax;
    return encode(orbit_transfer_check(g, h, o.nmax));
  }
  throw UsageError("unknown command " + verb);
}

std::string summary(const std::string& verb, const Json& result) {
  std::ostringstream os;
  os << verb << ":";
  for (const char* key : {"size", "certificate", "accepted", "order", "fixesU", "withinBound", "verified", "exists",
                          "isRelationGroup", "allSucceeded"})
    if (result.contains(key)) os << " " << key << "=" << result[key].dump();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigidifying extensions, rigidity checks and orbit-equivalence tools"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--verbose", o.verbose, "Summary on standard error");
  app.add_option("--out", o.out, "Write the JSON result here instead of standard output");

  auto oracle_opts = [&](CLI::App* c) {
    c->add_option("--oracle", o.oracle, "rado | layered-rado | generic[:seed] | bit-tournament")->capture_default_str();
    c->add_option("--targets", o.targets, "Comma-separated vertices");
    c->add_option("--probe", o.probe, "Comparability scan depth")->capture_default_str();
  };
  auto aut_opts = [&](CLI::App* c) {
    c->add_option("--vertex-cap", o.vertex_cap, "Automorphism search vertex cap")->capture_default_str();
    c->add_option("--node-budget", o.node_budget, "Automorphism search node budget")->capture_default_str();
  };
  auto group_opts = [&](CLI::App* c, bool two) {
    c->add_option("--group", o.group, "Generators in cycle notation, ';'-separated")->required();
    c->add_option("--degree", o.degree, "Number of points")->required();
    if (two) c->add_option("--other", o.other, "Second group, same notation")->required();
  };

  auto* sample = app.add_subcommand("sample", "Finite sample of an oracle");
  oracle_opts(sample);
  auto* rig = app.add_subcommand("rigidify", "Build a rigidifying extension of the targets");
  rig->add_option("construction", o.construction, "tournament | ordered-graph")->required();
  oracle_opts(rig);
  rig->add_option("--budget", o.budget, "Scan cap per difference stream")->capture_default_str();
  rig->add_flag("--no-aut", o.no_aut, "Skip the automorphism search on the result");
  aut_opts(rig);
  auto* ver = app.add_subcommand("verify", "Rigidity of a structure or report");
  ver->add_option("--in", o.in, "Structure or report JSON ('-' for standard input)")->required();
  ver->add_option("--mode", o.mode, "brute | certificate")->capture_default_str();
  ver->add_option("--targets", o.targets, "Vertices to check (default: embeddedU)");
  aut_opts(ver);
  auto* aut = app.add_subcommand("aut", "Automorphism group generators and orbits");
  aut->add_option("--in", o.in, "Structure JSON")->required();
  aut_opts(aut);
  auto* mg = app.add_subcommand("maxgood", "Maximal good partition of a tournament");
  mg->add_option("--in", o.in, "Tournament JSON")->required();
  auto* ap = app.add_subcommand("approx", "≈_Y classes of a graph");
  ap->add_option("--in", o.in, "Graph JSON")->required();
  ap->add_option("--set", o.set, "Y as comma-separated vertices (default: all)");
  ap->add_option("--equiv0", o.equiv0, "Also report classes of |Γ(x)△Γ(y)| <= N, transitively closed");
  auto* ind = app.add_subcommand("indisc", "Extract and verify an indiscernible family");
  ind->add_option("--in", o.in, "Problem JSON")->required();
  auto* orb = app.add_subcommand("orbits", "Orbits of a permutation group");
  group_opts(orb, false);
  orb->add_option("--on", o.on, "points | tuples | subsets | powerset")->capture_default_str();
  orb->add_option("--k", o.k, "Arity")->capture_default_str();
  auto* oe = app.add_subcommand("orbit-eq", "Compare orbits of two groups");
  group_opts(oe, true);
  oe->add_option("--kmax", o.kmax, "Largest arity")->capture_default_str();
  auto* cl = app.add_subcommand("closure", "Orbit closure on subsets");
  group_opts(cl, false);
  auto* rg = app.add_subcommand("relgroup", "Relation-group test");
  group_opts(rg, false);
  auto* ro = app.add_subcommand("regorbit", "Regular orbit on the power set");
  group_opts(ro, false);
  auto* tr = app.add_subcommand("transfer", "Tuple transfer through witness sets");
  group_opts(tr, true);
  tr->add_option("--nmax", o.nmax, "Largest tuple length")->capture_default_str();
  auto* bd = app.add_subcommand("bounds", "Size bounds for n targets");
  bd->add_option("--n", o.n, "Number of targets")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    Json config;
    const Json result = run(verb, o, config);
    const std::string text = canonical(Json{{"command", verb}, {"config", config}, {"result", result}});
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(o.out);
      if (!f) throw UsageError("--out: cannot write " + o.out);
      f << text;
    }
    if (o.verbose) std::cerr << summary(verb, result) << "\n";
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
