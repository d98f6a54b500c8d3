#include "swp/lang/normalize.hpp"

#include "swp/error.hpp"

namespace swp {

namespace {

bool is_literal_formula(const Formula& f) {
  if (f.kind() == Formula::Kind::kAtom) return true;
  return f.kind() == Formula::Kind::kNot && f.child().kind() == Formula::Kind::kAtom;
}

Literal as_literal(const Formula& f) {
  if (f.kind() == Formula::Kind::kAtom) return Literal{f.atom_value(), true};
  return Literal{f.child().atom_value(), false};
}

Formula literals_formula(const std::vector<Literal>& lits) {
  std::vector<Formula> parts;
  for (const auto& l : lits) parts.push_back(Formula::literal(l));
  return Formula::conjunction(std::move(parts));
}

struct Normalizer {
  std::set<std::string> taken;
  NormalizeOptions opts;

  std::string fresh_snapshot(const std::string& r) {
    std::string name = r + "_hat";
    for (int n = 2; taken.count(name); ++n) name = r + "_hat" + std::to_string(n);
    taken.insert(name);
    return name;
  }

  Update atomic(const Update& u) {
    if (!is_quantifier_free(u.qual())) throw ValidationError("quantified qualification in: " + to_string(u));
    std::set<std::string> allowed(u.vars().begin(), u.vars().end());
    for (const auto& v : free_variables(u.qual()))
      if (!allowed.count(v)) throw ValidationError("variable " + v + " is not a foreach variable in: " + to_string(u));
    Formula qual = u.qual();
    std::optional<Update> snap;
    if (opts.snapshot && mentions_predicate(qual, u.target())) {
      std::string hat = fresh_snapshot(u.target());
      qual = rename_predicates(qual, {{u.target(), hat}});
      std::vector<std::string> ys;
      std::vector<Term> yt;
      for (std::size_t i = 0; i < u.vars().size(); ++i) {
        ys.push_back("S" + std::to_string(i + 1));
        yt.push_back(Term::variable(ys.back()));
      }
      snap = Update::insert(ys, Formula::atom(Atom::relation(u.target(), yt)), hat, ys, true);
    }
    std::vector<Update> parts;
    if (is_literal_conjunction(qual)) {
      if (opts.check_safety) check_range_restricted(u.vars(), conjunction_literals(qual));
      parts.push_back(rebuild(u, qual));
    } else {
      for (const auto& conj : to_dnf(qual)) {
        if (opts.check_safety) check_range_restricted(u.vars(), conj);
        parts.push_back(rebuild(u, literals_formula(conj)));
      }
    }
    Update out = Update::skip();
    if (!parts.empty()) {
      out = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;) out = Update::seq(parts[i], out);
    }
    return snap ? Update::seq(*snap, out) : out;
  }

  static Update rebuild(const Update& u, const Formula& qual) {
    if (u.kind() == Update::Kind::kInsert)
      return Update::insert(u.vars(), qual, u.target(), u.target_args(), u.is_snapshot());
    return Update::remove(u.vars(), qual, u.target(), u.target_args());
  }

  Update run(const Update& u) {
    switch (u.kind()) {
      case Update::Kind::kSkip:
        return u;
      case Update::Kind::kInsert:
      case Update::Kind::kDelete:
        return atomic(u);
      case Update::Kind::kSeq:
        return Update::seq(run(u.first()), run(u.second()));
      case Update::Kind::kIf: {
        Update then_branch = run(u.first());
        std::optional<Update> else_branch;
        if (u.has_else()) else_branch = run(u.second());
        if (is_clause_formula(u.cond())) return Update::conditional(u.cond(), then_branch, else_branch);
        auto clauses = to_clauses(u.cond());
        if (clauses.empty()) return then_branch;
        Update out = Update::conditional(Formula::from_clause(clauses.back()), then_branch, else_branch);
        for (std::size_t i = clauses.size() - 1; i-- > 0;)
          out = Update::conditional(Formula::from_clause(clauses[i]), out, else_branch);
        return out;
      }
    }
    return u;
  }
};

bool check(const Update& u, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  switch (u.kind()) {
    case Update::Kind::kSkip:
      return true;
    case Update::Kind::kInsert:
    case Update::Kind::kDelete:
      if (!is_literal_conjunction(u.qual())) return fail("qualification is not a conjunction of literals: " + to_string(u));
      if (mentions_predicate(u.qual(), u.target())) return fail("target occurs in its qualification: " + to_string(u));
      return true;
    case Update::Kind::kSeq:
      return check(u.first(), why) && check(u.second(), why);
    case Update::Kind::kIf:
      if (!is_clause_formula(u.cond())) return fail("condition is not a single clause: " + to_string(u));
      return check(u.first(), why) && check(u.second(), why);
  }
  return true;
}

void collect_snapshots(const Update& u, std::set<std::string>& out) {
  if (u.kind() == Update::Kind::kInsert && u.is_snapshot()) out.insert(u.target());
  if (u.kind() == Update::Kind::kSeq || u.kind() == Update::Kind::kIf) {
    collect_snapshots(u.first(), out);
    collect_snapshots(u.second(), out);
  }
}

}  // namespace

bool is_literal_conjunction(const Formula& f) {
  if (f.is_true() || is_literal_formula(f)) return true;
  if (f.kind() != Formula::Kind::kAnd) return false;
  for (const auto& k : f.children())
    if (!is_literal_formula(k)) return false;
  return true;
}

bool is_clause_formula(const Formula& f) {
  if (f.is_false() || is_literal_formula(f)) return true;
  if (f.kind() != Formula::Kind::kOr) return false;
  for (const auto& k : f.children())
    if (!is_literal_formula(k)) return false;
  return true;
}

std::vector<Literal> conjunction_literals(const Formula& f) {
  std::vector<Literal> out;
  if (f.is_true()) return out;
  if (f.kind() == Formula::Kind::kAnd) {
    for (const auto& k : f.children()) out.push_back(as_literal(k));
  } else {
    out.push_back(as_literal(f));
  }
  return out;
}

void check_range_restricted(const std::vector<std::string>& vars, const std::vector<Literal>& conj) {
  std::set<std::string> bound;
  for (const auto& l : conj)
    if (l.positive && !l.atom.is_equality()) collect_variables(l.atom, bound);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& l : conj) {
      if (!l.positive || !l.atom.is_equality()) continue;
      auto lhs = l.atom.lhs();
      auto rhs = l.atom.rhs();
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        auto known = [&](const Term& t) { return t.is_constant() || bound.count(t.name()); };
        if (known(lhs[i]) && rhs[i].is_variable() && bound.insert(rhs[i].name()).second) grew = true;
        if (known(rhs[i]) && lhs[i].is_variable() && bound.insert(lhs[i].name()).second) grew = true;
      }
    }
  }
  for (const auto& v : vars)
    if (!bound.count(v)) throw ValidationError("qualification does not range-restrict variable " + v);
}

Update normalize_update(const Update& u, const std::set<std::string>& taken, NormalizeOptions opts) {
  Normalizer n{taken, opts};
  for (const auto& [p, a] : update_predicates(u)) n.taken.insert(p);
  return n.run(u);
}

bool is_normalized(const Update& u, std::string* why) { return check(u, why); }

std::set<std::string> snapshot_relations(const Update& u) {
  std::set<std::string> out;
  collect_snapshots(u, out);
  return out;
}

}  // namespace swp
