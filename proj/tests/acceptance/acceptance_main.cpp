// Acceptance criteria: one PASS/FAIL line each; exit status 1 if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "swp/datalog/evaluate.hpp"
#include "swp/deductive/delta.hpp"
#include "swp/deductive/wp_deductive.hpp"
#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"
#include "swp/lang/parser.hpp"
#include "swp/logic/resolution.hpp"
#include "swp/oracle/generate.hpp"
#include "swp/oracle/properties.hpp"
#include "swp/oracle/structure.hpp"
#include "swp/wp/rewrite.hpp"
#include "swp/wp/substitute.hpp"
#include "test_support.hpp"

namespace {

using namespace swp;
using Clock = std::chrono::steady_clock;

// Pinned thresholds.
constexpr double kGoldenSeconds = 1.0;
constexpr std::size_t kWpCases = 500;
constexpr double kWpSeconds = 60.0;
constexpr std::size_t kNaiveSamplesPerCase = 8;
constexpr std::size_t kConfluenceCases = 100;
constexpr std::size_t kConfluenceOrders = 10;
constexpr std::size_t kConfluenceExtraConstants = 1;
constexpr std::size_t kTerminationCases = 2000;
constexpr std::size_t kGraphs = 100;
constexpr std::size_t kMaxNodes = 8;
constexpr double kGeometricRatio = 1.5;  // min size(k+1)/size(k), negative family
constexpr double kLinearFactor = 2.0;    // max deviation from the least-squares line, positive family
constexpr int kFamilyMaxK = 5;
constexpr int kCapFamilyK = 10;              // 2^k generated clauses
constexpr std::size_t kCapFamilyLimit = 1000;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 2) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << x;
  return os.str();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << n << ". " << name << ": " << o.detail << std::endl;
}

// Expected rules are written with zzdelta_ / PRIME markers because the
// generated names are reserved in parsed input.
Atom unmark(const Atom& a) {
  if (a.is_equality()) return a;
  std::string name = a.predicate();
  if (name.starts_with("zzdelta_")) name = name.substr(2);
  if (name.ends_with("PRIME")) name = name.substr(0, name.size() - 5) + "_prime";
  return Atom::relation(name, a.args());
}

std::set<std::string> rule_keys(const std::vector<Rule>& rs) {
  std::set<std::string> out;
  for (const auto& r : rs) out.insert(rule_key(r));
  return out;
}

std::set<std::string> expected_rules(const std::string& text) {
  std::set<std::string> out;
  DatalogProgram p = parse_program(text);
  for (const auto& r : p.rules()) {
    Rule u{unmark(r.head), {}};
    for (const auto& l : r.body) u.body.push_back(Literal{unmark(l.atom), l.positive});
    out.insert(rule_key(u));
  }
  return out;
}

// Equal up to renaming within each clause and clause order.
bool same(const std::vector<Clause>& cs, const std::string& text) {
  std::vector<Clause> a, b;
  for (const auto& c : cs) a.push_back(simplify_disequalities(c));
  for (const auto& c : to_clauses(parse_constraint(text))) b.push_back(simplify_disequalities(c));
  return test::same_clauses(a, b);
}

std::vector<Rule> added_rules(const DatalogProgram& full, const DatalogProgram& base) {
  std::set<std::string> old = rule_keys(base.rules());
  std::vector<Rule> out;
  for (const auto& r : full.rules())
    if (!old.count(rule_key(r))) out.push_back(r);
  return out;
}

Formula con(const std::string& f) { return parse_constraint(test::read_data(f)); }
Update upd(const std::string& f) { return parse_update(test::read_data(f)); }
DatalogProgram prog(const std::string& f) { return parse_program(test::read_data(f)); }

Outcome golden_examples() {
  auto t0 = Clock::now();
  std::vector<std::string> bad;
  auto check = [&](const std::string& what, bool ok) {
    if (!ok) bad.push_back(what);
  };
  auto swp_is = [](const SwpReport& r, const std::string& text) {
    auto cs = r.swp.conjuncts();
    return cs && same(*cs, text);
  };

  check("insert wp",
        same(to_clauses(wp_full(normalize_update(upd("insert_p_into_r.upd")), con("r_in_q.con"))), "forall X: (r(X) | p(X)) -> q(X)"));
  check("delete-then-insert wp",
        same(to_clauses(wp_full(normalize_update(upd("delete_s_insert_p.upd")), con("r_in_q.con"))), "forall X: ((r(X) & !s(X)) | p(X)) -> q(X)"));
  check("insert swp", swp_is(rewrite_swp(normalize_update(upd("insert_p_into_r.upd")), con("r_in_q.con")), "forall X: p(X) -> q(X)"));
  check("Res_r shared variable", same(res_r(to_clauses(parse_constraint("(!r(X,Y) | q(Y,Z)) & (r(X,Y) | !q(X,Y))")), "r"), "q(Y,Z) | !q(X,Y)"));
  check("Res_r ground pair",
        same(res_r(to_clauses(parse_constraint("(!r(X,Y) | !r(X,Z) | q(Y,Z)) & (r(X,Y) | (X,Y) != (a,b))")),
                          "r"), "(!r(a,Z) | q(b,Z)) & (!r(a,Y) | q(Y,b))"));
  SwpReport transitive = rewrite_swp(normalize_update(upd("insert_p_aa.upd")), con("transitive_pq.con"));
  check("transitive swp", transitive.swp.kind == ClauseTree::Kind::kTrue);
  check("delete-then-insert swp", swp_is(rewrite_swp(normalize_update(upd("delete_s_insert_p.upd")), con("r_in_q.con")), "!p(X) | q(X)"));
  check("functional swp", swp_is(rewrite_swp(normalize_update(upd("insert_p_ab.upd")), con("functional_p.con")), "q(b,b) & (!p(a,Z) | q(b,Z)) & (!p(a,Y) | q(Y,b))"));

  DatalogProgram p4 = prog("tc_path.dl");
  DeductiveWp w4 = wp_deductive(upd("insert_path_into_tc.upd"), con("tc_in_i.con"), p4);
  check("tc/path primed rules", rule_keys(added_rules(w4.program, p4)) ==
                                      expected_rules("tcPRIME(X,Y) :- arc(X,Y). tcPRIME(X,Y) :- arc(X,Z), tcPRIME(Z,Y)."
                                                     "tcPRIME(X,Y) :- tc(X,Y). tcPRIME(X,Y) :- path(X,Y)."));
  check("tc/path wp", to_string(close_universally(w4.formula)) == "forall X,Y: !tc_prime(X,Y) | i(X,Y)");

  DatalogProgram p6 = prog("tc.dl");
  Formula acyclic = con("acyclic.con");
  DeltaResult d6 = delta_saturation(p6, *ground_inserts(upd("insert_arc_db.upd")), acyclic);
  std::vector<Rule> d6_rules;
  for (const auto& pr : d6.delta_rules) d6_rules.push_back(pr.rule);
  check("ground insert delta program",
        rule_keys(d6_rules) == expected_rules("zzdelta_tc(d,b). zzdelta_tc(d,Y) :- tc(b,Y)."
                                              "zzdelta_tc(X,Y) :- arc(X,Z), zzdelta_tc(Z,Y)."));
  check("ground insert wp", to_string(d6.wp) == "!exists X: delta_tc(X,X)");
  DeductiveWp w6 = wp_deductive(upd("insert_arc_db.upd"), acyclic, p6);
  check("ground insert primed program", rule_keys(added_rules(w6.program, p6)) ==
                            expected_rules("tcPRIME(X,Y) :- arcPRIME(X,Y). tcPRIME(X,Y) :- arcPRIME(X,Z), tcPRIME(Z,Y)."
                                           "arcPRIME(X,Y) :- arc(X,Y). arcPRIME(d,b)."));

  DeltaResult dq = delta_qualified_insert(p4, upd("insert_path_into_arc.upd"), acyclic);
  std::vector<Rule> dq_rules;
  for (const auto& pr : dq.delta_rules) dq_rules.push_back(pr.rule);
  check("qualified-insert delta program",
        rule_keys(dq_rules) == expected_rules("zzdelta_tc(X,Y) :- edge(X,Y). zzdelta_tc(X,Y) :- edge(X,Z), tc(Z,Y)."
                                              "zzdelta_tc(X,Y) :- edge(X,Z), zzdelta_tc(Z,Y)."
                                              "zzdelta_tc(X,Y) :- arc(X,Z), zzdelta_tc(Z,Y)."));
  double secs = seconds_since(t0);
  check("runtime", secs < kGoldenSeconds);
  std::string detail = std::to_string(14 - bad.size()) + "/14 goldens, " + fmt(secs, 3) + " s";
  if (dq_rules.size() == 4) detail += "; qualified insert: 4 delta rules";
  for (const auto& b : bad) detail += "; mismatch: " + b;
  return {bad.empty(), detail};
}

PropertyStats corpus_stats;

Outcome wp_property() {
  auto t0 = Clock::now();
  PropertyConfig cfg;
  cfg.cases = kWpCases;
  cfg.seed = 1;
  corpus_stats = run_properties(cfg);
  double secs = seconds_since(t0);
  // Independent spot check: the naive evaluator and executor on random
  // instances of every case.
  std::size_t naive_bad = 0;
  std::mt19937_64 rng(2024);
  Signature sig(domain_constants(cfg.gen.domain_size), cfg.gen.relations);
  std::vector<std::size_t> free(sig.tuple_count());
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = i;
  InstanceBatches all(sig, free);
  std::uniform_int_distribution<std::uint64_t> pick(0, all.instance_count() - 1);
  for (std::size_t i = 0; i < kWpCases; ++i) {
    GenConfig gc = cfg.gen;
    gc.seed = cfg.seed + i;
    GeneratedCase g = generate_case(gc);
    Formula wp = wp_full(normalize_update(g.update), g.constraint);
    for (std::size_t k = 0; k < kNaiveSamplesPerCase; ++k) {
      Database b = all.instance(pick(rng));
      if (test::naive_holds(wp, b) != test::naive_holds(g.constraint, test::naive_exec(g.update, b))) ++naive_bad;
    }
  }
  const auto& s = corpus_stats;
  bool ok = s.cases >= kWpCases && s.wp_violations == 0 && s.normalize_violations == 0 && naive_bad == 0 &&
            secs < kWpSeconds;
  std::string detail = std::to_string(s.cases) + " pairs x " + std::to_string(s.instances / s.cases) +
                       " databases, " + std::to_string(s.wp_violations) + " violations, " +
                       std::to_string(naive_bad) + " naive-oracle disagreements in " +
                       std::to_string(kWpCases * kNaiveSamplesPerCase) + " samples, " + fmt(secs) + " s";
  if (!s.failures.empty()) detail += "\n" + s.failures.front();
  return {ok, detail};
}

Outcome swp_property() {
  const auto& s = corpus_stats;
  PropertyConfig fam;
  fam.gen.domain_size = 2;
  fam.gen.relations = {{"p", 2}, {"q", 2}};
  GeneratedCase g;
  g.update = upd("insert_p_aa.upd");
  g.constraint = con("transitive_pq.con");
  PropertyStats ex;
  check_case(g, fam, ex);
  bool ok = s.cases > 0 && s.swp_violations == 0 && s.weaker_violations == 0 && s.drop_violations == 0 &&
            ex.violations() == 0 && ex.strict_witnesses > 0;
  return {ok, std::to_string(s.swp_violations) + " swp violations, " + std::to_string(s.weaker_violations) +
                  " wp-not-implying-swp, " + std::to_string(s.drop_violations) + " unjustified drops; " +
                  std::to_string(ex.strict_witnesses) + " databases where swp holds and wp fails (singleton insert), " +
                  std::to_string(s.strict_witnesses) + " on the corpus"};
}

Outcome confluence() {
  PropertyConfig cfg;
  cfg.cases = kConfluenceCases;
  cfg.seed = 1;
  cfg.confluence_orders = kConfluenceOrders;
  cfg.extra_constants = kConfluenceExtraConstants;
  PropertyStats s = run_properties(cfg);
  return {s.confluence_violations == 0 && s.cap_hits == 0,
          std::to_string(s.cases) + " pairs x " + std::to_string(kConfluenceOrders) + " orders, " +
              std::to_string(s.confluence_violations) + " disagreements"};
}

Outcome termination() {
  PropertyConfig cfg;
  cfg.cases = kTerminationCases;
  cfg.seed = 1;
  PropertyStats s = run_properties(cfg);
  // The constructed family must trip the cap.
  Update u = normalize_update(parse_update("foreach X: p(X) do insert r(X)"));
  std::string lits, args;
  const int k = kCapFamilyK;
  for (int i = 1; i <= k; ++i) {
    lits += "!r(X" + std::to_string(i) + ") | ";
    args += (i > 1 ? "," : "") + std::string("X") + std::to_string(i);
  }
  bool family_trips = false;
  try {
    RewriteOptions o;
    o.max_conjuncts = kCapFamilyLimit;
    rewrite_swp(u, parse_constraint(lits + "q(" + args + ")"), o);
  } catch (const BlowupError&) {
    family_trips = true;
  }
  bool ok = s.bound_violations == 0 && s.cap_hits == 0 && family_trips;
  return {ok, std::to_string(s.cases) + " pairs, " + std::to_string(s.bound_violations) + " over bound, " +
                  std::to_string(s.cap_hits) + " cap hits, max " + std::to_string(s.max_steps) +
                  " steps; constructed family k=" + std::to_string(k) + (family_trips ? " trips" : " does not trip") +
                  " a cap of " + std::to_string(kCapFamilyLimit)};
}

bool has_cycle(const Database& model, const std::string& rel) {
  if (!model.arity(rel)) return false;
  for (const auto& t : model.relation(rel))
    if (t[0] == t[1]) return true;
  return false;
}

Outcome deductive_equivalence() {
  std::vector<std::string> letters = {"a", "b", "c", "d", "e", "f", "g", "h"};
  Formula acyclic = con("acyclic.con");
  DatalogProgram p6 = prog("tc.dl");
  Update u6 = upd("insert_arc_db.upd");
  DeltaResult d6 = delta_saturation(p6, *ground_inserts(u6), acyclic);
  DeductiveWp w6 = wp_deductive(u6, acyclic, p6);
  DatalogProgram p4 = prog("tc_path.dl");
  Update uq = upd("insert_path_into_arc.upd");
  DeltaResult dq = delta_qualified_insert(p4, uq, acyclic);
  DeductiveWp wq = wp_deductive(uq, acyclic, p4);

  std::mt19937_64 rng(6);
  std::size_t graphs = 0, disagreements = 0, unsafe6 = 0, unsafeq = 0;
  std::string first;
  auto compare = [&](const DeltaResult& d, const DeductiveWp& w, const DatalogProgram& p, const Update& u,
                     const Database& b, std::size_t& unsafe) {
    bool delta_ok = !has_cycle(evaluate(d.program, b), "delta_tc");
    bool wp_ok = !has_cycle(evaluate(w.program, b), "tc_prime");
    bool truth = !has_cycle(test::naive_model(p, test::naive_exec_deductive(u, p, b)), "tc");
    unsafe += !truth;
    if (delta_ok != wp_ok || wp_ok != truth) {
      ++disagreements;
      if (first.empty()) first = "\ncounterexample (" + to_string(u) + "):\n" + to_string(b);
    }
  };
  while (graphs < kGraphs) {
    std::size_t n = 4 + graphs % (kMaxNodes - 3);
    std::vector<std::string> nodes(letters.begin(), letters.begin() + static_cast<long>(n));
    Database arcs = test::random_dag(rng, nodes, 0.3, "arc");
    if (has_cycle(test::naive_model(p6, arcs), "tc")) continue;
    compare(d6, w6, p6, u6, arcs, unsafe6);
    Database b = test::merge(arcs, test::random_graph(rng, nodes, 0.12, "edge"));
    b.declare("body", 2);
    compare(dq, wq, p4, uq, b, unsafeq);
    ++graphs;
  }
  return {disagreements == 0,
          std::to_string(graphs) + " acyclic graphs (4-" + std::to_string(kMaxNodes) + " nodes), " +
              std::to_string(disagreements) + " disagreements; updates create a cycle in " + std::to_string(unsafe6) +
              " (ground insert) and " + std::to_string(unsafeq) + " (qualified insert) cases" + first};
}

Outcome complexity_echo() {
  Update u = normalize_update(parse_update("foreach X: p(X) do insert r(X)"));
  std::vector<double> neg, pos;
  for (int k = 1; k <= kFamilyMaxK; ++k) {
    std::string nlits, plits, args;
    for (int i = 1; i <= k; ++i) {
      std::string x = "X" + std::to_string(i);
      nlits += "!r(" + x + ") | ";
      plits += " | r(" + x + ")";
      args += (i > 1 ? "," : "") + x;
    }
    SwpReport rn = rewrite_swp(u, parse_constraint(nlits + "q(" + args + ")"));
    SwpReport rp = rewrite_swp(u, parse_constraint("!q(" + args + ")" + plits));
    neg.push_back(static_cast<double>(rn.rewritten.literal_count()));
    pos.push_back(static_cast<double>(rp.rewritten.literal_count()));
  }
  double min_ratio = 1e9;
  for (std::size_t i = 1; i < neg.size(); ++i) min_ratio = std::min(min_ratio, neg[i] / neg[i - 1]);
  double n = static_cast<double>(pos.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    double x = static_cast<double>(i + 1);
    sx += x;
    sy += pos[i];
    sxx += x * x;
    sxy += x * pos[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double icpt = (sy - slope * sx) / n;
  double worst = 1.0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    double fit = slope * static_cast<double>(i + 1) + icpt;
    worst = std::max(worst, std::max(pos[i] / fit, fit / pos[i]));
  }
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + std::to_string(static_cast<long>(x));
    return s;
  };
  bool ok = min_ratio >= kGeometricRatio && worst <= kLinearFactor;
  return {ok, "negative occurrences [" + list(neg) + "] literals, min ratio " + fmt(min_ratio) +
                  "; positive occurrences [" + list(pos) + "], max deviation from linear fit x" + fmt(worst)};
}

struct Run {
  int status;
  std::string output;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(SWP_BINARY) + " " + args + " 2>&1";
  Run r{-1, {}};
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  std::array<char, 512> buf;
  while (fgets(buf.data(), buf.size(), f)) r.output += buf.data();
  int st = pclose(f);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Outcome hypothesis_guards() {
  std::string d = SWP_TEST_DATA;
  Run h2 = run_cli("delta -p " + d + "/tc.dl -c " + d + "/acyclic.con -u " + d + "/insert_tc_into_arc.upd");
  Run h2wp = run_cli("wp -p " + d + "/tc.dl -c " + d + "/acyclic.con -u " + d + "/insert_tc_into_arc.upd");
  Run nl = run_cli("delta -p " + d + "/nonlinear.dl -c " + d + "/acyclic.con -u " + d + "/insert_arc_db.upd");
  bool ok = h2.status == 3 && h2.output.find("H2") != std::string::npos && h2wp.status == 3 &&
            h2wp.output.find("H2") != std::string::npos && nl.status == 3 &&
            nl.output.find("non-linear") != std::string::npos;
  return {ok, "H2 delta exit " + std::to_string(h2.status) + ", H2 wp exit " + std::to_string(h2wp.status) +
                  ", non-linear delta exit " + std::to_string(nl.status)};
}

}  // namespace

int main() {
  report(1, "golden examples", golden_examples);
  report(2, "wp property", wp_property);
  report(3, "swp property", swp_property);
  report(4, "confluence sampling", confluence);
  report(5, "termination", termination);
  report(6, "deductive equivalence", deductive_equivalence);
  report(7, "complexity echo", complexity_echo);
  report(8, "hypothesis guards", hypothesis_guards);
  return failures ? 1 : 0;
}
