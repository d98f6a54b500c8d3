#include <set>

#include "swp/datalog/analysis.hpp"
#include "swp/deductive/delta.hpp"
#include "swp/deductive/hypotheses.hpp"
#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"

namespace swp {

namespace {

// Stands for the qualification instantiated at its arguments.
const std::string kPhi = "$phi";

struct Pending {
  Rule rule;
  std::string provenance;
};

Rule rename_rule_apart(const Rule& r, const std::set<std::string>& avoid) {
  Substitution s;
  std::set<std::string> used = avoid;
  for (const auto& v : rule_variables(r)) {
    std::string name = v;
    while (used.count(name)) name += "'";
    used.insert(name);
    if (name != v) s.assign(v, Term::variable(name));
  }
  Rule out{s.apply(r.head), {}};
  for (const auto& l : r.body) out.body.push_back(s.apply(l));
  return out;
}

class QualifiedBuilder {
 public:
  QualifiedBuilder(const DatalogProgram& p, const Update& u) : p_(p), u_(u) {
    phi_ = conjunction_literals(u.qual());
    for (const auto& l : phi_) {
      if (!l.positive && !l.atom.is_equality() && p.is_idb(l.atom.predicate()))
        throw UnsupportedError("qualification negates derived atom " + to_string(l.atom));
    }
    if (phi_.size() == 1 && phi_.front().positive && !phi_.front().atom.is_equality() &&
        p.is_idb(phi_.front().atom.predicate()))
      unfold_pred_ = phi_.front().atom.predicate();
  }

  // Replaces every placeholder atom, unfolding a single derived
  // qualification atom one level.
  void expand(Pending start, std::vector<Pending>& out) {
    std::vector<Pending> work{std::move(start)};
    while (!work.empty()) {
      Pending cur = std::move(work.back());
      work.pop_back();
      std::size_t k = 0;
      while (k < cur.rule.body.size() && cur.rule.body[k].atom.predicate() != kPhi) ++k;
      if (k == cur.rule.body.size()) {
        out.push_back(std::move(cur));
        continue;
      }
      std::vector<Literal> inst = instantiate(cur.rule.body[k].atom);
      if (unfold_pred_.empty()) {
        Rule r{cur.rule.head, {}};
        for (std::size_t j = 0; j < cur.rule.body.size(); ++j) {
          if (j != k) {
            r.body.push_back(cur.rule.body[j]);
            continue;
          }
          r.body.insert(r.body.end(), inst.begin(), inst.end());
        }
        if (auto s = simplify_rule(r)) work.push_back(Pending{*s, cur.provenance});
        continue;
      }
      unfold(cur, k, inst.front().atom, work);
    }
  }

 private:
  std::vector<Literal> instantiate(const Atom& placeholder) const {
    Substitution s;
    for (std::size_t i = 0; i < u_.target_args().size(); ++i) s.assign(u_.target_args()[i], placeholder.args()[i]);
    std::vector<Literal> out;
    for (const auto& l : phi_) out.push_back(s.apply(l));
    return out;
  }

  // Arguments at which the qualification equals atom a, if any.
  std::optional<std::vector<Term>> placeholder_args(const Atom& a) const {
    Substitution s;
    if (!match(phi_.front().atom, a, s)) return std::nullopt;
    std::vector<Term> args;
    for (const auto& v : u_.target_args()) {
      const Term* t = s.lookup(v);
      if (!t) return std::nullopt;
      args.push_back(*t);
    }
    return args;
  }

  void unfold(const Pending& cur, std::size_t k, const Atom& goal, std::vector<Pending>& work) {
    const auto defs = p_.rules_for(unfold_pred_);
    for (std::size_t d = 0; d < defs.size(); ++d) {
      Rule def = rename_rule_apart(*defs[d], rule_variables(cur.rule));
      auto s = mgu(def.head, goal);
      if (!s) continue;
      std::vector<Literal> rest;  // body of cur outside the placeholder
      for (std::size_t j = 0; j < cur.rule.body.size(); ++j)
        if (j != k) rest.push_back(s->apply(cur.rule.body[j]));
      std::vector<Literal> unfolded;
      for (const auto& l : def.body) unfolded.push_back(s->apply(l));
      std::string prov = cur.provenance + ", unfolded " + unfold_pred_ + " rule " + std::to_string(rule_number(defs[d]));
      if (auto folded = fold(cur, *s, unfolded, rest)) {
        work.push_back(Pending{*folded, prov + ", folded"});
        continue;
      }
      Rule r{s->apply(cur.rule.head), unfolded};
      r.body.insert(r.body.end(), rest.begin(), rest.end());
      if (auto simp = simplify_rule(r)) work.push_back(Pending{*simp, prov});
    }
  }

  // With cur = H <- $phi(u), B and a residual qualification atom phi(u')
  // among the unfolded literals: when some theta maps u to u' and fixes B,
  // phi(u') & B derive H theta, so both are replaced by that head.
  std::optional<Rule> fold(const Pending& cur, const Substitution& s, const std::vector<Literal>& unfolded,
                           const std::vector<Literal>& rest) const {
    std::size_t k = 0;
    while (k < cur.rule.body.size() && cur.rule.body[k].atom.predicate() != kPhi) ++k;
    Atom ph = s.apply(cur.rule.body[k].atom);
    Atom head = s.apply(cur.rule.head);
    std::set<std::string> fixed;
    for (const auto& l : rest) collect_variables(l.atom, fixed);
    for (std::size_t i = 0; i < unfolded.size(); ++i) {
      const Literal& l = unfolded[i];
      if (!l.positive || l.atom.is_equality() || l.atom.predicate() != unfold_pred_) continue;
      auto args = placeholder_args(l.atom);
      if (!args) continue;
      Substitution theta;
      if (!match(ph, Atom::relation(kPhi, *args), theta)) continue;
      bool moves_fixed = false;
      for (const auto& [v, t] : theta.bindings())
        if (fixed.count(v) && !(t.is_variable() && t.name() == v)) moves_fixed = true;
      if (moves_fixed) continue;
      Rule r{head, {}};
      for (std::size_t j = 0; j < unfolded.size(); ++j)
        if (j != i) r.body.push_back(unfolded[j]);
      r.body.push_back(Literal{theta.apply(head), true});
      return simplify_rule(r);
    }
    return std::nullopt;
  }

  std::size_t rule_number(const Rule* r) const {
    for (std::size_t i = 0; i < p_.rules().size(); ++i)
      if (&p_.rules()[i] == r) return i + 1;
    return 0;
  }

  const DatalogProgram& p_;
  const Update& u_;
  std::vector<Literal> phi_;
  std::string unfold_pred_;
};

}  // namespace

DeltaResult delta_qualified_insert(const DatalogProgram& p, const Update& u, const Formula& c,
                                   const DeltaOptions& opts) {
  if (u.kind() != Update::Kind::kInsert || u.is_snapshot())
    throw UnsupportedError("qualified delta construction handles a single foreach insert");
  if (!is_literal_conjunction(u.qual()))
    throw UnsupportedError("qualification is not a conjunction of literals");
  HypothesisReport h = check_hypotheses(p, u, c);
  if (!h.ok()) {
    std::string msg = "hypothesis check failed:";
    for (const auto& v : h.violations) msg += "\n  " + v;
    throw UnsupportedError(msg);
  }
  Atom t = denial_atom(c);
  const std::string& r = u.target();

  DeltaResult d;
  d.program = p;
  d.program.declare(r, u.vars().size());
  std::set<std::string> deps = dependents(d.program, r);
  d.wp = Formula::truth();
  if (!deps.count(t.predicate())) {
    d.safe = true;
    d.safe_reason = t.predicate() + " does not depend on " + r;
    return d;
  }
  bool r_idb = p.is_idb(r);
  auto delta_atom = [&](const Atom& a) {
    if (a.predicate() == r && !r_idb) return Atom::relation(kPhi, a.args());
    return Atom::relation(delta_name(a.predicate()), a.args());
  };

  QualifiedBuilder qb(p, u);
  std::vector<Pending> produced;
  if (r_idb) {
    std::vector<Term> xs;
    for (const auto& v : u.target_args()) xs.push_back(Term::variable(v));
    qb.expand(Pending{Rule{Atom::relation(delta_name(r), xs), {Literal{Atom::relation(kPhi, xs), true}}},
                      "seed from the qualification"},
              produced);
  }
  for (std::size_t i = 0; i < p.rules().size(); ++i) {
    const Rule& rule = p.rules()[i];
    if (!deps.count(rule.head.predicate())) continue;
    std::vector<std::size_t> pos;
    for (std::size_t j = 0; j < rule.body.size(); ++j) {
      const Literal& l = rule.body[j];
      if (l.atom.is_equality() || !deps.count(l.atom.predicate())) continue;
      if (!l.positive)
        throw UnsupportedError("rule " + to_string(rule) + " negates " + l.atom.predicate() + ", which depends on " + r);
      pos.push_back(j);
    }
    for (std::size_t mask = 1; mask < (std::size_t{1} << pos.size()); ++mask) {
      Rule v{Atom::relation(delta_name(rule.head.predicate()), rule.head.args()), rule.body};
      std::string at;
      for (std::size_t b = 0; b < pos.size(); ++b) {
        if (!((mask >> b) & 1)) continue;
        v.body[pos[b]].atom = delta_atom(v.body[pos[b]].atom);
        at += (at.empty() ? "" : ",") + std::to_string(pos[b] + 1);
      }
      qb.expand(Pending{v, "variant of rule " + std::to_string(i + 1) + " with delta at body position " + at},
                produced);
    }
  }

  std::set<std::string> seen;
  for (auto& pr : produced) {
    if (!seen.insert(rule_key(pr.rule)).second) continue;
    d.delta_rules.push_back(ProvenancedRule{std::move(pr.rule), std::move(pr.provenance)});
  }
  if (opts.prune_underivable) prune_underivable(d);
  for (const auto& pr : d.delta_rules) d.program.add_rule(pr.rule);
  d.program.declare(delta_name(t.predicate()), t.arity(), PredKind::kIdb);
  d.wp = delta_denial(t);
  return d;
}

}  // namespace swp
