#include "swp/logic/formula.hpp"

#include <algorithm>

#include "swp/error.hpp"

namespace swp {

struct Formula::Node {
  Kind kind = Kind::kTrue;
  Atom atom;
  std::vector<Formula> kids;
  std::vector<std::string> vars;
};

Formula::Formula() : Formula(truth()) {}

Formula Formula::truth() {
  static const auto n = std::make_shared<const Node>(Node{Kind::kTrue, {}, {}, {}});
  return Formula(n);
}

Formula Formula::falsity() {
  static const auto n = std::make_shared<const Node>(Node{Kind::kFalse, {}, {}, {}});
  return Formula(n);
}

Formula Formula::atom(Atom a) { return Formula(std::make_shared<const Node>(Node{Kind::kAtom, std::move(a), {}, {}})); }

Formula Formula::literal(const Literal& l) { return l.positive ? atom(l.atom) : negation(atom(l.atom)); }

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::kNot, {}, {std::move(f)}, {}}));
}

Formula Formula::conjunction(std::vector<Formula> fs) {
  if (fs.empty()) return truth();
  if (fs.size() == 1) return fs.front();
  return Formula(std::make_shared<const Node>(Node{Kind::kAnd, {}, std::move(fs), {}}));
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  if (fs.empty()) return falsity();
  if (fs.size() == 1) return fs.front();
  return Formula(std::make_shared<const Node>(Node{Kind::kOr, {}, std::move(fs), {}}));
}

Formula Formula::implication(Formula lhs, Formula rhs) { return disjunction({negation(std::move(lhs)), std::move(rhs)}); }

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  return Formula(std::make_shared<const Node>(Node{Kind::kForall, {}, {std::move(body)}, std::move(vars)}));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  return negation(forall(std::move(vars), negation(std::move(body))));
}

Formula Formula::from_clause(const Clause& c) {
  std::vector<Formula> lits;
  for (const auto& l : c) lits.push_back(literal(l));
  return disjunction(std::move(lits));
}

Formula Formula::from_clauses(const std::vector<Clause>& cs) {
  std::vector<Formula> parts;
  for (const auto& c : cs) parts.push_back(close_universally(from_clause(c)));
  return conjunction(std::move(parts));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Atom& Formula::atom_value() const { return node_->atom; }
const std::vector<Formula>& Formula::children() const { return node_->kids; }
const std::vector<std::string>& Formula::bound() const { return node_->vars; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return true;
    case Formula::Kind::kAtom:
      return a.atom_value() == b.atom_value();
    default:
      return a.bound() == b.bound() && a.children() == b.children();
  }
}

namespace {

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kForall:
      return 0;
    case Formula::Kind::kOr:
      return 1;
    case Formula::Kind::kAnd:
      return 2;
    case Formula::Kind::kNot:
      return 3;
    default:
      return 4;
  }
}

bool is_exists(const Formula& f) {
  return f.kind() == Formula::Kind::kNot && f.child().kind() == Formula::Kind::kForall &&
         f.child().child().kind() == Formula::Kind::kNot;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s;
}

void print(const Formula& f, int ctx, bool rightmost, std::string& out) {
  bool quant = f.kind() == Formula::Kind::kForall || is_exists(f);
  if (quant) {
    bool parens = !rightmost;
    if (parens) out += "(";
    if (is_exists(f)) {
      out += "exists " + join(f.child().bound()) + ": ";
      print(f.child().child().child(), 0, true, out);
    } else {
      out += "forall " + join(f.bound()) + ": ";
      print(f.child(), 0, true, out);
    }
    if (parens) out += ")";
    return;
  }
  int p = precedence(f);
  bool parens = (f.kind() == Formula::Kind::kAnd || f.kind() == Formula::Kind::kOr) && p <= ctx;
  if (parens) {
    out += "(";
    rightmost = true;
  }
  switch (f.kind()) {
    case Formula::Kind::kTrue:
      out += "true";
      break;
    case Formula::Kind::kFalse:
      out += "false";
      break;
    case Formula::Kind::kAtom:
      out += to_string(f.atom_value());
      break;
    case Formula::Kind::kNot:
      if (f.child().kind() == Formula::Kind::kAtom && f.child().atom_value().is_equality()) {
        out += to_string(Literal{f.child().atom_value(), false});
      } else {
        out += "!";
        print(f.child(), 3, rightmost, out);
      }
      break;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      const char* sep = f.kind() == Formula::Kind::kAnd ? " & " : " | ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        print(f.children()[i], p, rightmost && i + 1 == f.children().size(), out);
      }
      break;
    }
    case Formula::Kind::kForall:
      break;
  }
  if (parens) out += ")";
}

void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::kAtom:
      for (const auto& t : f.atom_value().args())
        if (t.is_variable() && !bound.count(t.name())) out.insert(t.name());
      break;
    case Formula::Kind::kForall: {
      std::vector<std::string> added;
      for (const auto& v : f.bound())
        if (bound.insert(v).second) added.push_back(v);
      free_vars_rec(f.child(), bound, out);
      for (const auto& v : added) bound.erase(v);
      break;
    }
    default:
      for (const auto& k : f.children()) free_vars_rec(k, bound, out);
  }
}

void all_vars(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Formula::Kind::kAtom) collect_variables(f.atom_value(), out);
  for (const auto& v : f.bound()) out.insert(v);
  for (const auto& k : f.children()) all_vars(k, out);
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Formula::Kind::kNot:
      return Formula::negation(std::move(kids.front()));
    case Formula::Kind::kAnd:
      return Formula::conjunction(std::move(kids));
    case Formula::Kind::kOr:
      return Formula::disjunction(std::move(kids));
    case Formula::Kind::kForall:
      return Formula::forall(f.bound(), std::move(kids.front()));
    default:
      return f;
  }
}

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  std::string v = base + "'";
  while (taken.count(v)) v += "'";
  taken.insert(v);
  return v;
}

Formula subst_rec(const Formula& f, const Substitution& s, std::set<std::string>& taken) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return f;
    case Formula::Kind::kAtom:
      return Formula::atom(s.apply(f.atom_value()));
    case Formula::Kind::kForall: {
      Substitution inner;
      std::set<std::string> range;
      for (const auto& [v, t] : s.bindings())
        if (t.is_variable()) range.insert(t.name());
      std::vector<std::string> vars;
      for (const auto& [v, t] : s.bindings())
        if (std::find(f.bound().begin(), f.bound().end(), v) == f.bound().end()) inner.assign(v, t);
      for (const auto& b : f.bound()) {
        if (range.count(b)) {
          std::string nb = fresh_name(b, taken);
          inner.assign(b, Term::variable(nb));
          vars.push_back(nb);
        } else {
          vars.push_back(b);
        }
      }
      return Formula::forall(vars, subst_rec(f.child(), inner, taken));
    }
    default: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(subst_rec(k, s, taken));
      return rebuild(f, std::move(kids));
    }
  }
}

Formula matrix_rec(const Formula& f, bool positive, std::set<std::string>& taken, Substitution& ren) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return f;
    case Formula::Kind::kAtom:
      return Formula::atom(ren.apply(f.atom_value()));
    case Formula::Kind::kForall: {
      if (!positive) throw ValidationError("existential quantifier is not supported in a universal constraint");
      Substitution saved = ren;
      for (const auto& v : f.bound()) {
        if (taken.count(v))
          ren.assign(v, Term::variable(fresh_name(v, taken)));
        else {
          taken.insert(v);
          ren.assign(v, Term::variable(v));
        }
      }
      Formula body = matrix_rec(f.child(), positive, taken, ren);
      ren = saved;
      return body;
    }
    case Formula::Kind::kNot:
      if (f.child().kind() == Formula::Kind::kNot && f.child().child().kind() == Formula::Kind::kForall)
        return matrix_rec(f.child().child(), positive, taken, ren);
      return Formula::negation(matrix_rec(f.child(), !positive, taken, ren));
    default: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(matrix_rec(k, positive, taken, ren));
      return rebuild(f, std::move(kids));
    }
  }
}

using Cnf = std::vector<std::vector<Literal>>;

Cnf cross(const Cnf& a, const Cnf& b) {
  Cnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      auto z = x;
      z.insert(z.end(), y.begin(), y.end());
      out.push_back(std::move(z));
    }
  return out;
}

// Clause form when cnf is true, dual (DNF) form when false.
Cnf normal_form(const Formula& f, bool positive, bool cnf) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse: {
      bool value = (f.kind() == Formula::Kind::kTrue) == positive;
      // CNF of true is the empty set; DNF of true is one empty conjunction.
      if (value == cnf) return {};
      return {{}};
    }
    case Formula::Kind::kAtom:
      return {{Literal{f.atom_value(), positive}}};
    case Formula::Kind::kNot:
      return normal_form(f.child(), !positive, cnf);
    case Formula::Kind::kForall:
      throw ValidationError("quantifier inside a quantifier-free context");
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      bool conj = (f.kind() == Formula::Kind::kAnd) == positive;
      if (conj == cnf) {
        Cnf out;
        for (const auto& k : f.children()) {
          auto part = normal_form(k, positive, cnf);
          out.insert(out.end(), part.begin(), part.end());
        }
        return out;
      }
      Cnf out = {{}};
      for (const auto& k : f.children()) out = cross(out, normal_form(k, positive, cnf));
      return out;
    }
  }
  return {};
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, true, out);
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> formula_constants(const Formula& f) {
  std::set<std::string> out;
  if (f.kind() == Formula::Kind::kAtom) collect_constants(f.atom_value(), out);
  for (const auto& k : f.children()) {
    auto sub = formula_constants(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

std::map<std::string, std::size_t> formula_predicates(const Formula& f) {
  std::map<std::string, std::size_t> out;
  if (f.kind() == Formula::Kind::kAtom && !f.atom_value().is_equality())
    out[f.atom_value().predicate()] = f.atom_value().arity();
  for (const auto& k : f.children()) {
    auto sub = formula_predicates(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

bool mentions_predicate(const Formula& f, const std::string& pred) {
  if (f.kind() == Formula::Kind::kAtom) return !f.atom_value().is_equality() && f.atom_value().predicate() == pred;
  for (const auto& k : f.children())
    if (mentions_predicate(k, pred)) return true;
  return false;
}

bool is_quantifier_free(const Formula& f) {
  if (f.kind() == Formula::Kind::kForall) return false;
  for (const auto& k : f.children())
    if (!is_quantifier_free(k)) return false;
  return true;
}

Formula close_universally(const Formula& f) {
  auto fv = free_variables(f);
  return Formula::forall(std::vector<std::string>(fv.begin(), fv.end()), f);
}

Formula substitute_terms(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  std::set<std::string> taken;
  all_vars(f, taken);
  for (const auto& [v, t] : s.bindings())
    if (t.is_variable()) taken.insert(t.name());
  return subst_rec(f, s, taken);
}

Formula rename_predicates(const Formula& f, const std::map<std::string, std::string>& names) {
  if (f.kind() == Formula::Kind::kAtom) {
    const Atom& a = f.atom_value();
    if (a.is_equality()) return f;
    auto it = names.find(a.predicate());
    if (it == names.end()) return f;
    return Formula::atom(Atom::relation(it->second, a.args()));
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& k : f.children()) kids.push_back(rename_predicates(k, names));
  return rebuild(f, std::move(kids));
}

Formula fold_constants(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kNot: {
      Formula k = fold_constants(f.child());
      if (k.is_true()) return Formula::falsity();
      if (k.is_false()) return Formula::truth();
      return Formula::negation(k);
    }
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      bool conj = f.kind() == Formula::Kind::kAnd;
      std::vector<Formula> kids;
      for (const auto& c : f.children()) {
        Formula k = fold_constants(c);
        if ((conj && k.is_false()) || (!conj && k.is_true())) return k;
        if ((conj && k.is_true()) || (!conj && k.is_false())) continue;
        kids.push_back(k);
      }
      return conj ? Formula::conjunction(std::move(kids)) : Formula::disjunction(std::move(kids));
    }
    case Formula::Kind::kForall: {
      Formula k = fold_constants(f.child());
      if (k.is_true() || k.is_false()) return k;
      return Formula::forall(f.bound(), k);
    }
    default:
      return f;
  }
}

Formula universal_matrix(const Formula& f) {
  std::set<std::string> taken = free_variables(f);
  Substitution ren;
  return matrix_rec(f, true, taken, ren);
}

std::vector<Clause> to_clauses(const Formula& f) {
  Formula m = universal_matrix(f);
  std::vector<Clause> out;
  std::set<Clause> seen;
  for (auto& lits : normal_form(m, true, true)) {
    Clause c(std::move(lits));
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<Literal>> to_dnf(const Formula& f) {
  if (!is_quantifier_free(f)) throw ValidationError("to_dnf requires a quantifier-free formula");
  auto raw = normal_form(f, true, false);
  std::vector<std::vector<Literal>> out;
  std::set<std::vector<Literal>> seen;
  for (auto& conj : raw) {
    std::vector<Literal> sorted;
    for (auto& l : conj)
      if (std::find(sorted.begin(), sorted.end(), l) == sorted.end()) sorted.push_back(l);
    if (seen.insert(sorted).second) out.push_back(std::move(sorted));
  }
  return out;
}

}  // namespace swp
