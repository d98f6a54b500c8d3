#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <json.hpp>

#include "swp/deductive/delta.hpp"
#include "swp/deductive/prime.hpp"
#include "swp/deductive/wp_deductive.hpp"
#include "swp/datalog/evaluate.hpp"
#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"
#include "swp/lang/parser.hpp"
#include "swp/oracle/exec.hpp"
#include "swp/oracle/properties.hpp"
#include "swp/oracle/structure.hpp"
#include "swp/wp/rewrite.hpp"
#include "swp/wp/substitute.hpp"

namespace swp::cli {

namespace {

struct Args {
  std::string constraint, update, program, db;
  std::string predicate;
  std::string trace_json;
  bool trace = false;
  bool verify = false;
  bool keep_reentrant = false;
  bool no_prune = false;
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  std::size_t max_conjuncts = 10000;
  std::size_t extra_constants = 1;
  std::size_t confluence_orders = 3;
  std::size_t jobs = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inputs share one schema so arities are checked across files.
struct Inputs {
  Schema schema;
  std::optional<DatalogProgram> program;
  std::optional<Formula> constraint;
  std::optional<Update> update;
  std::optional<Database> db;

  explicit Inputs(const Args& a) {
    if (!a.program.empty()) {
      program = parse_program(slurp(a.program), &schema);
      schema = program->schema();
    }
    if (!a.constraint.empty()) constraint = parse_constraint(slurp(a.constraint), &schema);
    if (!a.update.empty()) update = parse_update(slurp(a.update), &schema);
    if (!a.db.empty()) db = parse_database(slurp(a.db), &schema);
  }
};

const char* verdict(bool b) { return b ? "holds" : "violated"; }

std::string closed(const Formula& f) { return to_string(close_universally(fold_constants(f))); }

void print_trace(const SwpReport& r, std::ostream& out) {
  out << "trace:\n";
  for (const auto& s : r.trace) {
    out << "  #" << s.id << " [" << s.rule << "]";
    if (s.parent >= 0) out << " from #" << s.parent;
    out << "\n    " << s.redex << "\n    => " << s.result << "\n";
  }
}

nlohmann::json trace_json(const SwpReport& r) {
  nlohmann::json j;
  j["steps"] = r.steps;
  j["bound"] = r.bound;
  j["generated"] = r.generated;
  j["rewritten"] = to_string(r.rewritten);
  j["swp"] = to_string(r.swp);
  j["trace"] = nlohmann::json::array();
  for (const auto& s : r.trace)
    j["trace"].push_back({{"id", s.id}, {"parent", s.parent}, {"rule", s.rule}, {"redex", s.redex}, {"result", s.result}});
  j["dropped"] = nlohmann::json::array();
  for (const auto& d : r.dropped) {
    nlohmann::json e{{"clause", to_string(d.clause)}, {"reason", to_string(d.reason)}};
    if (d.subsumer) e["subsumer"] = to_string(*d.subsumer);
    j["dropped"].push_back(e);
  }
  return j;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("missing required input: " + what);
}

int cmd_wp(const Args& a, std::ostream& out) {
  Inputs in(a);
  require(in.constraint && in.update, "--constraint and --update");
  if (in.program) {
    DeductiveWp d = wp_deductive(*in.update, *in.constraint, *in.program);
    out << to_string(d.program);
    out << "wp: " << closed(d.formula) << "\n";
    return kOk;
  }
  Update un = normalize_update(*in.update);
  out << "wp: " << closed(wp_full(un, *in.constraint)) << "\n";
  return kOk;
}

SwpReport swp_report(const Args& a, const Inputs& in) {
  RewriteOptions ro;
  ro.max_conjuncts = a.max_conjuncts;
  ro.record_trace = a.trace || !a.trace_json.empty();
  return rewrite_swp(normalize_update(*in.update), *in.constraint, ro);
}

int cmd_swp(const Args& a, std::ostream& out) {
  Inputs in(a);
  require(in.constraint && in.update, "--constraint and --update");
  SwpReport r = swp_report(a, in);
  out << "swp: " << to_string(r.swp) << "\n";
  out << "dropped:";
  if (r.dropped.empty()) out << " none";
  out << "\n";
  for (const auto& d : r.dropped) {
    out << "  " << to_string(d.clause) << "  [" << to_string(d.reason);
    if (d.subsumer) out << ": " << to_string(*d.subsumer);
    out << "]\n";
  }
  out << "steps: " << r.steps << " (bound " << r.bound << ")\n";
  if (a.trace) print_trace(r, out);
  if (!a.trace_json.empty()) {
    std::ofstream f(a.trace_json);
    if (!f) throw ValidationError("cannot write " + a.trace_json);
    f << trace_json(r).dump(2) << "\n";
  }
  return kOk;
}

int cmd_exec(const Args& a, std::ostream& out) {
  Inputs in(a);
  require(in.update && in.db, "--update and --db");
  Database post = in.program ? exec_update_deductive(*in.update, *in.program, *in.db) : exec_update(*in.update, *in.db);
  out << to_string(post);
  return kOk;
}

int cmd_check(const Args& a, std::ostream& out, std::ostream& err) {
  Inputs in(a);
  require(in.constraint && in.update && in.db, "--constraint, --update and --db");
  if (in.program) {
    const DatalogProgram& p = *in.program;
    DeductiveWp d = wp_deductive(*in.update, *in.constraint, p);
    bool pre_c = eval_sentence(*in.constraint, evaluate(p, *in.db));
    bool wp = eval_sentence(d.formula, evaluate(d.program, *in.db));
    out << "constraint: " << verdict(pre_c) << "\n";
    out << "wp: " << verdict(wp) << "\n";
    if (!a.verify) return kOk;
    Database post = exec_update_deductive(*in.update, p, *in.db);
    bool post_c = eval_sentence(*in.constraint, evaluate(p, post));
    out << "post-state constraint: " << verdict(post_c) << "\n";
    if (wp != post_c) {
      err << "violation: wp " << verdict(wp) << " but the updated state leaves the constraint " << verdict(post_c)
          << "\n";
      return kViolation;
    }
    out << "verify: ok\n";
    return kOk;
  }
  Update un = normalize_update(*in.update);
  SwpReport r = swp_report(a, in);
  bool pre_c = eval_sentence(*in.constraint, *in.db);
  bool swp = eval_sentence(r.swp_formula(), *in.db);
  out << "constraint: " << verdict(pre_c) << "\n";
  out << "swp: " << verdict(swp) << "\n";
  if (!pre_c) out << "note: swp is only meaningful on states satisfying the constraint\n";
  if (!a.verify) return kOk;
  bool wp = eval_sentence(wp_full(un, *in.constraint), *in.db);
  bool post_c = eval_sentence(*in.constraint, exec_update(*in.update, *in.db));
  out << "wp: " << verdict(wp) << "\n";
  out << "post-state constraint: " << verdict(post_c) << "\n";
  bool ok = true;
  if (wp != post_c) {
    err << "violation: wp " << verdict(wp) << " but the updated state leaves the constraint " << verdict(post_c)
        << "\n";
    ok = false;
  }
  if (pre_c && swp != post_c) {
    err << "violation: swp " << verdict(swp) << " but the updated state leaves the constraint " << verdict(post_c)
        << "\n";
    ok = false;
  }
  if (!ok) return kViolation;
  out << "verify: ok\n";
  return kOk;
}

int cmd_prime(const Args& a, std::ostream& out) {
  Inputs in(a);
  require(in.program.has_value() && !a.predicate.empty(), "--program and --predicate");
  PrimedProgram pp = prime_program(*in.program, a.predicate);
  out << to_string(pp.program);
  return kOk;
}

int cmd_delta(const Args& a, std::ostream& out, std::ostream& err) {
  Inputs in(a);
  require(in.program && in.constraint && in.update, "--program, --constraint and --update");
  DeltaOptions opts;
  opts.keep_reentrant = a.keep_reentrant;
  opts.prune_underivable = !a.no_prune;
  DeltaResult d;
  if (auto ins = ground_inserts(*in.update))
    d = delta_saturation(*in.program, *ins, *in.constraint, opts);
  else
    d = delta_qualified_insert(*in.program, *in.update, *in.constraint, opts);
  if (d.safe) {
    out << "safe: " << d.safe_reason << "\n";
    out << "wp: " << to_string(d.wp) << "\n";
    return kOk;
  }
  out << to_string(d);
  out << "wp: " << to_string(d.wp) << "\n";
  for (const auto& p : d.pruned) err << "pruned: " << p << "\n";
  return kOk;
}

int cmd_fuzz(const Args& a, std::ostream& out, std::ostream& err) {
  PropertyConfig cfg;
  cfg.seed = a.seed;
  cfg.cases = a.cases;
  cfg.max_conjuncts = a.max_conjuncts;
  cfg.extra_constants = a.extra_constants;
  cfg.confluence_orders = a.confluence_orders;
  std::size_t jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(a.cases, 1));

  std::vector<PropertyStats> parts(jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) {
    pool.emplace_back([&, j] {
      for (std::size_t i; (i = next++) < cfg.cases;) {
        PropertyConfig one = cfg;
        one.gen.seed = cfg.seed + i;
        check_case(generate_case(one.gen), one, parts[j]);
      }
    });
  }
  for (auto& t : pool) t.join();

  PropertyStats s;
  for (auto& p : parts) {
    s.cases += p.cases;
    s.instances += p.instances;
    s.wp_violations += p.wp_violations;
    s.swp_violations += p.swp_violations;
    s.weaker_violations += p.weaker_violations;
    s.normalize_violations += p.normalize_violations;
    s.drop_violations += p.drop_violations;
    s.bound_violations += p.bound_violations;
    s.confluence_violations += p.confluence_violations;
    s.cap_hits += p.cap_hits;
    s.strict_witnesses += p.strict_witnesses;
    s.max_steps = std::max(s.max_steps, p.max_steps);
    s.failures.insert(s.failures.end(), p.failures.begin(), p.failures.end());
  }
  std::sort(s.failures.begin(), s.failures.end());
  out << "cases: " << s.cases << "\n";
  out << "instances: " << s.instances << "\n";
  out << "wp violations: " << s.wp_violations << "\n";
  out << "swp violations: " << s.swp_violations << "\n";
  out << "wp-implies-swp violations: " << s.weaker_violations << "\n";
  out << "normalization violations: " << s.normalize_violations << "\n";
  out << "drop violations: " << s.drop_violations << "\n";
  out << "bound violations: " << s.bound_violations << "\n";
  out << "confluence violations: " << s.confluence_violations << "\n";
  out << "cap hits: " << s.cap_hits << "\n";
  out << "strict swp witnesses: " << s.strict_witnesses << "\n";
  out << "max steps: " << s.max_steps << "\n";
  for (const auto& f : s.failures) err << f << "\n";
  return s.violations() ? kViolation : kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weakest preconditions and simplified integrity checks for database updates"};
  app.require_subcommand(1);
  Args a;

  auto inputs = [&](CLI::App* c, bool con, bool upd, bool prog, bool db) {
    if (con) c->add_option("--constraint,-c", a.constraint, "constraint file (.con)")->check(CLI::ExistingFile);
    if (upd) c->add_option("--update,-u", a.update, "update file (.upd)")->check(CLI::ExistingFile);
    if (prog) c->add_option("--program,-p", a.program, "Datalog rule base (.dl)")->check(CLI::ExistingFile);
    if (db) c->add_option("--db,-d", a.db, "database (.db)")->check(CLI::ExistingFile);
  };
  auto cap = [&](CLI::App* c) {
    c->add_option("--max-conjuncts", a.max_conjuncts, "cap on clauses generated while rewriting");
  };

  CLI::App* wp = app.add_subcommand("wp", "print the weakest precondition");
  inputs(wp, true, true, true, false);
  CLI::App* swp = app.add_subcommand("swp", "print the simplified precondition");
  inputs(swp, true, true, false, false);
  cap(swp);
  swp->add_flag("--trace", a.trace, "print the rewrite derivation");
  swp->add_option("--trace-json", a.trace_json, "write the derivation as JSON to a file");
  CLI::App* ex = app.add_subcommand("exec", "apply an update to a database");
  inputs(ex, false, true, true, true);
  CLI::App* check = app.add_subcommand("check", "evaluate the precondition on a database");
  inputs(check, true, true, true, true);
  cap(check);
  check->add_flag("--verify", a.verify, "cross-check against executing the update");
  CLI::App* prime = app.add_subcommand("prime", "print the primed program for a predicate");
  inputs(prime, false, false, true, false);
  prime->add_option("--predicate,-r", a.predicate, "updated predicate")->required();
  CLI::App* delta = app.add_subcommand("delta", "print the delta program for an insertion");
  inputs(delta, true, true, true, false);
  delta->add_flag("--keep-reentrant", a.keep_reentrant, "keep rules that re-enter the inserted tuple");
  delta->add_flag("--no-prune", a.no_prune, "keep rules over predicates without derivations");
  CLI::App* fuzz = app.add_subcommand("fuzz", "check the wp and swp properties on generated updates");
  fuzz->add_option("--seed", a.seed, "first generator seed");
  fuzz->add_option("--cases", a.cases, "number of generated cases");
  fuzz->add_option("--extra-constants", a.extra_constants, "fresh constants in confluence comparisons");
  fuzz->add_option("--orders", a.confluence_orders, "random rewrite orders per case (0 disables)");
  fuzz->add_option("--jobs,-j", a.jobs, "worker threads (0: one per core)");
  cap(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*wp) return cmd_wp(a, out);
    if (*swp) return cmd_swp(a, out);
    if (*ex) return cmd_exec(a, out);
    if (*check) return cmd_check(a, out, err);
    if (*prime) return cmd_prime(a, out);
    if (*delta) return cmd_delta(a, out, err);
    if (*fuzz) return cmd_fuzz(a, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const BlowupError& e) {
    err << "blow-up: " << e.what() << "\n";
    return kUnsupported;
  } catch (const CapExceededError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kUnsupported;
  }
  return kInputError;
}

}  // namespace swp::cli
