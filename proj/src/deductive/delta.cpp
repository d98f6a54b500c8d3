#include "swp/deductive/delta.hpp"

#include <algorithm>
#include <set>

#include "swp/datalog/analysis.hpp"
#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"

namespace swp {

Atom denial_atom(const Formula& c) {
  auto clauses = to_clauses(c);
  if (clauses.size() != 1 || clauses.front().size() != 1)
    throw ValidationError("constraint must have the shape !exists X: t(X), got " + to_string(c));
  const Literal& l = clauses.front().literals().front();
  if (l.positive || l.atom.is_equality())
    throw ValidationError("constraint must have the shape !exists X: t(X), got " + to_string(c));
  return l.atom;
}

std::optional<std::vector<Atom>> ground_inserts(const Update& u) {
  std::vector<Atom> out;
  std::vector<const Update*> stack{&u};
  std::vector<const Update*> atoms;
  while (!stack.empty()) {
    const Update* x = stack.back();
    stack.pop_back();
    if (x->kind() == Update::Kind::kSeq) {
      stack.push_back(&x->second());
      stack.push_back(&x->first());
    } else {
      atoms.push_back(x);
    }
  }
  for (const Update* x : atoms) {
    if (x->kind() != Update::Kind::kInsert || x->is_snapshot() || !is_literal_conjunction(x->qual()))
      return std::nullopt;
    Substitution s;
    for (const auto& l : conjunction_literals(x->qual())) {
      if (!l.positive || !l.atom.is_equality()) return std::nullopt;
      auto lhs = l.atom.lhs();
      auto rhs = l.atom.rhs();
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        const Term& v = lhs[i].is_variable() ? lhs[i] : rhs[i];
        const Term& k = lhs[i].is_variable() ? rhs[i] : lhs[i];
        if (!v.is_variable() || !k.is_constant()) return std::nullopt;
        const Term* prev = s.lookup(v.name());
        if (prev && *prev != k) return std::nullopt;
        s.assign(v.name(), k);
      }
    }
    std::vector<Term> args;
    for (const auto& v : x->target_args()) {
      const Term* k = s.lookup(v);
      if (!k) return std::nullopt;
      args.push_back(*k);
    }
    out.push_back(Atom::relation(x->target(), args));
    if (out.front().predicate() != x->target()) return std::nullopt;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::string rule_key(const Rule& r) {
  std::map<std::string, std::string> names;
  auto rename = [&](const Atom& a) {
    Substitution s;
    for (const auto& t : a.args()) {
      if (!t.is_variable()) continue;
      auto [it, fresh] = names.emplace(t.name(), "V" + std::to_string(names.size() + 1));
      s.assign(t.name(), Term::variable(it->second));
    }
    return s.apply(a);
  };
  std::string key = to_string(rename(r.head)) + ":-";
  std::vector<std::string> body;
  for (const auto& l : r.body) body.push_back(to_string(Literal{rename(l.atom), l.positive}));
  std::sort(body.begin(), body.end());
  for (const auto& b : body) key += b + ",";
  return key;
}

void prune_underivable(DeltaResult& d) {
  auto is_base = [](const std::string& pred) { return !pred.starts_with("delta_"); };
  std::set<std::string> derivable;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& pr : d.delta_rules) {
      const std::string& h = pr.rule.head.predicate();
      if (derivable.count(h)) continue;
      bool ok = std::all_of(pr.rule.body.begin(), pr.rule.body.end(), [&](const Literal& l) {
        return !l.positive || l.atom.is_equality() || is_base(l.atom.predicate()) ||
               derivable.count(l.atom.predicate());
      });
      if (ok) {
        derivable.insert(h);
        grew = true;
      }
    }
  }
  std::vector<ProvenancedRule> kept;
  for (auto& pr : d.delta_rules) {
    std::string missing;
    for (const auto& l : pr.rule.body)
      if (l.positive && !l.atom.is_equality() && !is_base(l.atom.predicate()) && !derivable.count(l.atom.predicate()))
        missing = l.atom.predicate();
    if (missing.empty())
      kept.push_back(std::move(pr));
    else
      d.pruned.push_back(to_string(pr.rule) + " (" + missing + " has no derivation)");
  }
  d.delta_rules = std::move(kept);
}

namespace {

struct Item {
  Rule rule;
  int origin;  // 1-based rule number in the input program
  std::vector<std::string> facts;
};

std::vector<Item> resolve_round(const std::vector<Item>& in, const std::vector<Atom>& facts) {
  std::vector<Item> out;
  for (const auto& it : in) {
    for (std::size_t k = 0; k < it.rule.body.size(); ++k) {
      const Literal& l = it.rule.body[k];
      if (!l.positive || l.atom.is_equality() || l.atom.predicate() != facts.front().predicate()) continue;
      for (const auto& f : facts) {
        auto s = mgu(l.atom, f);
        if (!s) continue;
        Rule r{s->apply(it.rule.head), {}};
        for (std::size_t j = 0; j < it.rule.body.size(); ++j)
          if (j != k) r.body.push_back(s->apply(it.rule.body[j]));
        auto simp = simplify_rule(r);
        if (!simp) continue;
        Item next{*simp, it.origin, it.facts};
        next.facts.push_back(to_string(f));
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
  return s;
}

}  // namespace

Formula delta_denial(const Atom& t) {
  Atom d = Atom::relation(delta_name(t.predicate()), t.args());
  std::set<std::string> vars;
  collect_variables(d, vars);
  return Formula::negation(Formula::exists(std::vector<std::string>(vars.begin(), vars.end()), Formula::atom(d)));
}

DeltaResult delta_saturation(const DatalogProgram& p, const std::vector<Atom>& inserts, const Formula& c,
                             const DeltaOptions& opts) {
  if (inserts.empty()) throw ValidationError("delta saturation needs at least one inserted atom");
  const std::string& r = inserts.front().predicate();
  for (const auto& a : inserts) {
    if (a.predicate() != r || !a.is_ground())
      throw ValidationError("delta saturation inserts ground atoms into a single relation");
  }
  if (!is_linear(p))
    throw UnsupportedError(
        "non-linear program: delta saturation requires at most one derived atom per rule body");
  if (p.is_idb(r)) throw UnsupportedError("delta saturation inserts into a stored relation; " + r + " is derived");
  Atom t = denial_atom(c);

  DeltaResult d;
  d.program = p;
  d.program.declare(r, inserts.front().arity());
  std::set<std::string> deps = dependents(d.program, r);
  d.wp = Formula::truth();
  if (!deps.count(t.predicate())) {
    d.safe = true;
    d.safe_reason = t.predicate() + " does not depend on " + r;
    return d;
  }

  // Step 1.
  std::vector<Item> pi;
  for (std::size_t i = 0; i < p.rules().size(); ++i) {
    const Rule& rule = p.rules()[i];
    if (!deps.count(rule.head.predicate())) continue;
    Atom h = Atom::relation(delta_name(rule.head.predicate()), rule.head.args());
    pi.push_back(Item{Rule{h, rule.body}, static_cast<int>(i) + 1, {}});
    std::size_t n = 0;
    for (const auto& l : rule.body) n += !l.atom.is_equality() && l.atom.predicate() == r;
    d.stats.max_target_atoms = std::max(d.stats.max_target_atoms, n);
  }
  if (pi.empty()) {
    d.safe = true;
    d.safe_reason = "no rule depends on " + r;
    return d;
  }

  std::set<std::string> seen;
  auto emit = [&](const Item& it, const std::string& prov) {
    if (!seen.insert(rule_key(it.rule)).second) return;
    d.delta_rules.push_back(ProvenancedRule{it.rule, prov});
  };

  // Step 2.
  std::vector<Item> round = resolve_round(pi, inserts);
  if (round.empty()) {
    d.safe = true;
    d.safe_reason = "no rule resolves with the inserted atoms";
    return d;
  }
  while (!round.empty()) {
    ++d.stats.step2_rounds;
    for (const auto& it : round)
      emit(it, "step2 resolvent of rule " + std::to_string(it.origin) + " with " + join(it.facts));
    round = resolve_round(round, inserts);
  }

  // Step 3.
  std::vector<Item> sigma;
  for (const auto& it : pi) {
    Item s = it;
    bool has_idb = false;
    for (auto& l : s.rule.body) {
      if (!l.positive || l.atom.is_equality()) continue;
      const std::string& q = l.atom.predicate();
      if (q != r && deps.count(q) && p.is_idb(q)) {
        l.atom = Atom::relation(delta_name(q), l.atom.args());
        has_idb = true;
      }
    }
    if (has_idb) sigma.push_back(std::move(s));
  }
  int level = 1;
  round = sigma;
  while (!round.empty()) {
    ++d.stats.step3_rounds;
    for (const auto& it : round) {
      std::string prov = "step3 delta substitution in rule " + std::to_string(it.origin);
      if (!it.facts.empty()) prov += ", resolvent with " + join(it.facts);
      if (level >= 2 && inserts.size() == 1 && !opts.keep_reentrant) {
        if (seen.insert(rule_key(it.rule)).second)
          d.pruned.push_back(to_string(it.rule) + " (reenters the inserted tuple)");
        continue;
      }
      emit(it, prov);
    }
    round = resolve_round(round, inserts);
    ++level;
  }

  if (opts.prune_underivable) prune_underivable(d);
  for (const auto& pr : d.delta_rules) d.program.add_rule(pr.rule);
  d.program.declare(delta_name(t.predicate()), t.arity(), PredKind::kIdb);
  d.wp = delta_denial(t);
  return d;
}

std::string to_string(const DeltaResult& d) {
  std::string out;
  for (const auto& r : d.program.rules()) {
    bool is_delta = r.head.predicate().starts_with("delta_");
    if (!is_delta) out += to_string(r) + "\n";
  }
  for (const auto& pr : d.delta_rules) out += "% " + pr.provenance + "\n" + to_string(pr.rule) + "\n";
  return out;
}

}  // namespace swp
