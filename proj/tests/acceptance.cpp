// Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "orbiteq/errors.hpp"
#include "orbiteq/rigidify.hpp"
#include "test_support.hpp"

using namespace orbiteq;
using orbiteq::testkit::Rng;

namespace {

// Wall-clock limits in seconds.
constexpr double kLimitTournamentBuild = 30;
constexpr double kLimitTournamentRigidity = 60;
constexpr double kLimitOrderedGraph = 120;
constexpr double kLimitGroupEngine = 5;
constexpr double kLimitTransfer = 30;
constexpr double kLimitOracles = 30;
constexpr double kLimitProperty = 120;  // no limit is specified; generous guard

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Line {
  std::string id;
  std::string title;
  double limit;
  std::function<Outcome()> run;
};

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

std::string str(const BigInt& b) { return b.str(); }

RigidifyConfig config(OracleSpec o, std::vector<Natural> targets) {
  RigidifyConfig c;
  c.oracle = std::move(o);
  c.targets = std::move(targets);
  return c;
}

// Tournament reports shared by criteria 1 and 2. Holds the error text when
// the construction failed.
struct Built {
  std::optional<RigidifyReport> report;
  std::string error;
  double seconds = 0;
};

std::map<std::string, Built>& tournament_cache() {
  static std::map<std::string, Built> cache;
  return cache;
}

const Built& build_tournament(const std::string& key, const OracleSpec& o, std::vector<Natural> targets) {
  auto& cache = tournament_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  Built b;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto c = config(o, std::move(targets));
    c.search_automorphisms = false;
    b.report = rigidify_tournament(c);
  } catch (const std::exception& e) {
    b.error = e.what();
  }
  b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cache.emplace(key, std::move(b)).first->second;
}

void check_size(Outcome& o, const std::string& label, const Built& b, std::size_t expected,
                const BigInt& closed) {
  if (!b.report) return fail(o, label + ": " + b.error);
  const auto& r = *b.report;
  std::ostringstream s;
  s << label << " |V|=" << r.labels.size() << " (" << b.seconds << " s)";
  if (r.labels.size() != expected) fail(o, s.str() + " expected " + std::to_string(expected));
  else o.detail += (o.detail.empty() ? "" : "; ") + s.str();
  if (r.bounds.tournament_closed_form != closed || !r.bounds.discrepancy)
    fail(o, label + " closed form " + str(r.bounds.tournament_closed_form) + " not flagged as " + str(closed));
  if (b.seconds >= kLimitTournamentBuild) fail(o, label + " over time");
}

void check_rigid(Outcome& o, const std::string& label, const Built& b, bool exhaustive) {
  if (!b.report) return fail(o, label + ": no structure (" + b.error + ")");
  const auto& r = *b.report;
  if (r.certificate != "accepted") fail(o, label + " certificate " + r.certificate + ": " + r.certificate_reason);
  const auto t0 = std::chrono::steady_clock::now();
  const auto refined = automorphisms(r.built).order;
  if (refined != 1) fail(o, label + " refined |Aut|=" + str(refined));
  if (exhaustive) {
    const auto plain = testkit::backtrack_aut_order(r.built);
    if (plain != 1) fail(o, label + " exhaustive |Aut|=" + std::to_string(plain));
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.pass) o.detail += (o.detail.empty() ? "" : "; ") + label + " rigid";
  if (s >= kLimitTournamentRigidity) fail(o, label + " over time");
}

Outcome criterion1() {
  Outcome o;
  check_size(o, "n=2", build_tournament("g2", OracleSpec::generic_tournament(0), {0, 1}), 14, 16);
  check_size(o, "n=3", build_tournament("g3", OracleSpec::generic_tournament(0), {0, 1, 2}), 255, 257);
  return o;
}

Outcome criterion2() {
  Outcome o;
  check_rigid(o, "n=2", build_tournament("g2", OracleSpec::generic_tournament(0), {0, 1}), true);
  check_rigid(o, "n=3", build_tournament("g3", OracleSpec::generic_tournament(0), {0, 1, 2}), false);
  return o;
}

// The same two criteria on the bit tournament, whose difference sets are
// reachable within the scan cap at n=3.
Outcome supplementary_bit_tournament() {
  Outcome o;
  check_size(o, "n=3", build_tournament("b3", OracleSpec::bit_tournament(), {0, 1, 2}), 255, 257);
  check_rigid(o, "n=3", build_tournament("b3", OracleSpec::bit_tournament(), {0, 1, 2}), false);
  return o;
}

Outcome criterion3() {
  Outcome o;
  Rng rng(31337);
  std::vector<std::pair<OracleSpec, std::vector<Natural>>> cases;
  auto draw = [&](std::size_t n) {
    std::set<Natural> U;
    while (U.size() < n) U.insert(testkit::pick(rng, 0, 15));
    return std::vector<Natural>(U.begin(), U.end());
  };
  for (int i = 0; i < 20; ++i) cases.emplace_back(OracleSpec::rado(), draw(2));
  for (int i = 0; i < 5; ++i) cases.emplace_back(OracleSpec::rado(), draw(3));
  const auto layered = OracleSpec::layered_rado();
  for (int found = 0; found < 5;) {
    Natural a = testkit::pick(rng, 0, 31), b = testkit::pick(rng, 0, 31);
    if (a == b) continue;
    const auto c = comparability(layered, a, b, 512);
    if (c != Comparability::less && c != Comparability::greater) continue;
    cases.emplace_back(layered, std::vector<Natural>{std::min(a, b), std::max(a, b)});
    ++found;
  }
  std::size_t ok = 0, largest = 0;
  for (const auto& [oracle, U] : cases) {
    std::ostringstream label;
    label << oracle_kind_name(oracle.kind) << "{";
    for (std::size_t i = 0; i < U.size(); ++i) label << (i ? "," : "") << U[i];
    label << "}";
    try {
      auto c = config(oracle, U);
      c.search_automorphisms = false;
      const auto r = rigidify_ordered_graph(c);
      const BigInt bound = size_bounds(U.size()).graph_bound;
      bool good = true;
      if (BigInt(r.labels.size()) > bound) fail(o, label.str() + " |V|=" + std::to_string(r.labels.size()) + " > " + str(bound)), good = false;
      if (!fixes_pointwise(r.built, r.embedded_u)) fail(o, label.str() + " does not fix U"), good = false;
      largest = std::max(largest, r.labels.size());
      ok += good;
    } catch (const std::exception& e) {
      fail(o, label.str() + ": " + e.what());
    }
  }
  o.detail = std::to_string(ok) + "/" + std::to_string(cases.size()) + " sets, largest |V|=" +
             std::to_string(largest) + (o.detail.empty() ? "" : "; " + o.detail);
  if (size_bounds(2).graph_bound != 11) fail(o, "bound at n=2 is not 11");
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(404);
  std::size_t mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const auto t = testkit::random_tournament(testkit::pick(rng, 1, 7), rng);
    const auto brute = testkit::brute_maximal_good_sets(t);
    std::vector<int> seen(t.n, 0);
    for (const auto& b : brute)
      for (Vertex v : b) ++seen[v];
    const bool partition = std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
    mismatches += !partition || maximal_good_partition(t).blocks != brute;
  }
  if (mismatches) fail(o, std::to_string(mismatches) + " mismatches");
  else o.detail = "200 tournaments, 0 mismatches";
  return o;
}

Outcome criterion5() {
  Outcome o;
  Rng rng(505);
  std::size_t accepted = 0, violations = 0;
  for (int i = 0; i < 500; ++i) {
    const auto t = testkit::random_tournament(testkit::pick(rng, 1, 8), rng);
    if (!certificate_check(t).accepted) continue;
    ++accepted;
    violations += testkit::brute_aut_order(t) != 1;
  }
  o.detail = std::to_string(accepted) + " accepted, " + std::to_string(violations) + " violations";
  if (violations || accepted == 0) o.pass = false;
  return o;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(606);
  std::size_t violations = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = testkit::pick(rng, 1, 8);
    const auto g = testkit::random_graph(n, rng);
    VertexSet small, big;
    for (Vertex v = 0; v < n; ++v) {
      const auto r = testkit::pick(rng, 0, 2);
      if (r >= 1) big.push_back(v);
      if (r == 2) small.push_back(v);
    }
    const auto c = approx_classes(g, big);
    for (const auto& cls : c.partition.blocks) {
      bool complete = true, null = true;
      for (Vertex a : cls)
        for (Vertex b : cls)
          if (a < b) (g.adjacent(a, b) ? null : complete) = false;
      violations += !complete && !null;
    }
    for (Vertex x : small)
      for (Vertex y : small)
        violations += approx_related(g, big, x, y) && !approx_related(g, small, x, y);
  }
  o.detail = "300 graphs, " + std::to_string(violations) + " violations";
  o.pass = violations == 0;
  return o;
}

Outcome criterion7() {
  Outcome o;
  Rng rng(707);
  std::size_t extracted = 0, infeasible = 0, violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = testkit::random_problem(rng);
    try {
      const auto f = extract(p);
      ++extracted;
      violations += verify(p.ambient, p.A, f).has_value();
    } catch (const ExtractionFailed&) {
      ++infeasible;
      violations += testkit::brute_monochromatic_exists(p, p.Q.size() * p.n);
    }
  }
  std::size_t disagreements = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t N = testkit::pick(rng, 3, 8);
    const Structure s = testkit::random_structure(N, rng);
    std::vector<Vertex> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t n = testkit::pick(rng, 1, 2);
    const std::size_t r = testkit::pick(rng, 1, std::min<std::size_t>(2, (N - 1) / n));
    IndiscernibleFamily f;
    std::size_t used = 0;
    for (std::size_t j = 0; j < r; ++j, used += n) f.P.emplace_back(order.begin() + used, order.begin() + used + n);
    VertexSet A;
    if (used < N && testkit::pick(rng, 0, 1)) A.push_back(order[used]);
    disagreements += verify(s, A, f).has_value() != verify_exhaustive(s, A, f).has_value();
  }
  o.detail = std::to_string(extracted) + " extracted and verified, " + std::to_string(infeasible) +
             " infeasible confirmed by brute force, " + std::to_string(violations) + " violations; " +
             std::to_string(disagreements) + "/100 pair-level disagreements";
  o.pass = violations == 0 && disagreements == 0;
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto s3 = PermutationGroup::parse("(0 1 2);(0 1)", 3);
  const auto a3 = PermutationGroup::parse("(0 1 2)", 3);
  const auto e = orbit_equivalent(s3, a3, 3);
  if (e.subsets_equal != std::vector<bool>{true, true, true}) fail(o, "subset orbits differ");
  if (e.tuple_divergence != std::optional<std::size_t>{2}) fail(o, "tuple divergence not at k=2");
  if (!orbit_closure(a3).same_group(s3)) fail(o, "closure(A3) != S3");
  if (is_relation_group(a3).is_relation_group) fail(o, "A3 reported as a relation group");
  if (!is_relation_group(s3).is_relation_group) fail(o, "S3 not reported as a relation group");
  if (!regular_powerset_orbit(PermutationGroup::parse("(0 1)", 2))) fail(o, "C2 has no regular orbit");
  if (regular_powerset_orbit(s3)) fail(o, "S3 has a regular orbit");
  if (o.pass) o.detail = "all exact";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::size_t groups = 0;
  for (const auto& g : testkit::transitive_groups_up_to_5()) {
    const auto grp = PermutationGroup::parse(g.cycles, g.degree);
    const auto r = orbit_transfer_check(grp, grp, 3);
    ++groups;
    if (!r.all_succeeded()) fail(o, g.name + " failed");
  }
  const auto r = orbit_transfer_check(PermutationGroup::parse("(0 1 2);(0 1)", 3), PermutationGroup::parse("(0 1 2)", 3), 2);
  if (r.per_n.size() != 2 || r.per_n[0].succeeded != r.per_n[0].pairs || r.per_n[1].succeeded == r.per_n[1].pairs)
    fail(o, "(S3,A3) does not fail first at n=2");
  if (o.pass)
    o.detail = std::to_string(groups) + " groups transfer; (S3,A3) fails at n=2 on " +
               std::to_string(r.per_n[1].pairs - r.per_n[1].succeeded) + "/" + std::to_string(r.per_n[1].pairs) + " pairs";
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto rado = OracleSpec::rado();
  std::size_t checked = 0;
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    for (unsigned sub = mask;; sub = (sub - 1) & mask) {
      bool found = false;
      for (Natural w = 0; w <= (Natural{1} << 20) && !found; ++w) {
        if (w < 8 && (mask >> w & 1u)) continue;
        bool ok = true;
        for (Natural v = 0; v < 8 && ok; ++v)
          if (mask >> v & 1u) ok = query_edge(rado, v, w) == static_cast<bool>(sub >> v & 1u);
        found = ok;
      }
      ++checked;
      if (!found) fail(o, "rado extension fails for U=" + std::to_string(sub) + " of " + std::to_string(mask));
      if (sub == 0) break;
    }
  }
  const auto gen = OracleSpec::generic_tournament(0);
  for (Natural x = 0; x <= 10; ++x)
    for (Natural y = 0; y <= 10; ++y) {
      if (x == y) continue;
      std::size_t w = 0;
      for (Natural z = 0; z < 1000; ++z)
        if (z != x && z != y) w += query_arc(gen, x, z) && !query_arc(gen, y, z);
      if (w < 20) fail(o, "generic difference " + std::to_string(x) + "," + std::to_string(y) + " has " + std::to_string(w));
    }
  const auto c = comparability(OracleSpec::layered_rado(), 0, 1, 512);
  if (c != Comparability::less) fail(o, "layered 0 vs 1: " + comparability_name(c));
  if (o.pass) o.detail = std::to_string(checked) + " extension cases, 110 generic pairs, layered 0<1";
  return o;
}

}  // namespace

int main() {
  const std::vector<Line> lines{
      {"1", "tournament construction size", kLimitTournamentBuild * 2, criterion1},
      {"2", "tournament rigidity", kLimitTournamentRigidity * 2, criterion2},
      {"1+2/bit", "construction and rigidity at n=3 on the bit tournament", kLimitTournamentBuild + kLimitTournamentRigidity,
       supplementary_bit_tournament},
      {"3", "ordered-graph rigidity", kLimitOrderedGraph, criterion3},
      {"4", "maximal good sets vs brute force", kLimitProperty, criterion4},
      {"5", "certificate soundness", kLimitProperty, criterion5},
      {"6", "approx class structure", kLimitProperty, criterion6},
      {"7", "indiscernibility round trip", kLimitProperty, criterion7},
      {"8", "group engine", kLimitGroupEngine, criterion8},
      {"9", "orbit transfer", kLimitTransfer, criterion9},
      {"10", "oracle hypotheses", kLimitOracles, criterion10},
  };
  int failures = 0;
  for (const auto& line : lines) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = line.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s >= line.limit) fail(o, "took longer than " + std::to_string(line.limit) + " s");
    failures += !o.pass;
    std::printf("%s criterion %-7s %-55s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", line.id.c_str(), line.title.c_str(), s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, lines.size());
  return failures == 0 ? 0 : 1;
}
