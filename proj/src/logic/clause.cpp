#include "swp/logic/clause.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <map>

namespace swp {

Clause::Clause(std::vector<Literal> literals) : lits_(std::move(literals)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

std::set<std::string> Clause::variables() const {
  std::set<std::string> out;
  for (const auto& l : lits_) collect_variables(l.atom, out);
  return out;
}

std::set<std::string> Clause::constants() const {
  std::set<std::string> out;
  for (const auto& l : lits_) collect_constants(l.atom, out);
  return out;
}

std::size_t Clause::count(const std::string& pred, bool positive) const {
  std::size_t n = 0;
  for (const auto& l : lits_)
    if (!l.atom.is_equality() && l.positive == positive && l.atom.predicate() == pred) ++n;
  return n;
}

Clause apply_substitution(const Clause& c, const Substitution& s) {
  if (s.empty()) return c;
  std::vector<Literal> out;
  out.reserve(c.size());
  for (const auto& l : c) out.push_back(s.apply(l));
  return Clause(std::move(out));
}

Clause rename_apart(const Clause& c, const std::set<std::string>& avoid) {
  std::set<std::string> taken = avoid;
  for (const auto& v : c.variables()) taken.insert(v);
  Substitution s;
  for (const auto& v : c.variables()) {
    if (!avoid.count(v)) continue;
    std::string fresh = v + "'";
    while (taken.count(fresh)) fresh += "'";
    taken.insert(fresh);
    s.assign(v, Term::variable(fresh));
  }
  return apply_substitution(c, s);
}

namespace {

bool same_shape(const Literal& a, const Literal& b) {
  if (a.positive != b.positive || a.atom.is_equality() != b.atom.is_equality() ||
      a.atom.predicate() != b.atom.predicate() || a.atom.args().size() != b.atom.args().size())
    return false;
  for (std::size_t i = 0; i < a.atom.args().size(); ++i) {
    const Term& x = a.atom.args()[i];
    const Term& y = b.atom.args()[i];
    if (x.is_variable() != y.is_variable()) return false;
    if (x.is_constant() && x != y) return false;
  }
  return true;
}

using VarMap = std::map<std::string, std::string>;

bool extend_bijection(const Literal& a, const Literal& b, VarMap& fwd, VarMap& bwd) {
  for (std::size_t i = 0; i < a.atom.args().size(); ++i) {
    const Term& x = a.atom.args()[i];
    const Term& y = b.atom.args()[i];
    if (!x.is_variable()) continue;
    auto f = fwd.find(x.name());
    auto g = bwd.find(y.name());
    if (f != fwd.end() || g != bwd.end()) {
      if (f == fwd.end() || g == bwd.end() || f->second != y.name() || g->second != x.name()) return false;
    } else {
      fwd[x.name()] = y.name();
      bwd[y.name()] = x.name();
    }
  }
  return true;
}

// Literal labels in which every variable is replaced by a colour refined
// from its occurrences. Renaming leaves the labels unchanged.
std::vector<std::string> coloured_labels(const Clause& c) {
  std::map<std::string, std::string> colour;
  for (const auto& v : c.variables()) colour[v] = "";
  auto label = [&](const Literal& l) {
    std::string s = l.positive ? "+" : "-";
    s += l.atom.is_equality() ? "=" : l.atom.predicate();
    s += "(";
    for (const auto& t : l.atom.args()) s += (t.is_variable() ? "?" + colour[t.name()] : t.name()) + ",";
    return s + ")";
  };
  std::vector<std::string> labels;
  std::size_t classes = 1;
  for (std::size_t round = 0; round <= colour.size(); ++round) {
    labels.clear();
    for (const auto& l : c) labels.push_back(label(l));
    std::map<std::string, std::vector<std::string>> occ;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& args = c.literals()[i].atom.args();
      for (std::size_t p = 0; p < args.size(); ++p)
        if (args[p].is_variable()) occ[args[p].name()].push_back(labels[i] + "@" + std::to_string(p));
    }
    std::set<std::string> distinct;
    for (auto& [v, xs] : occ) {
      std::sort(xs.begin(), xs.end());
      std::string joined;
      for (const auto& x : xs) joined += x + "|";
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016zx", std::hash<std::string>{}(joined));
      colour[v] = buf;
      distinct.insert(buf);
    }
    if (distinct.size() <= classes) break;
    classes = distinct.size();
  }
  labels.clear();
  for (const auto& l : c) labels.push_back(label(l));
  return labels;
}

bool variant_search(const std::vector<Literal>& a, const std::vector<Literal>& b, const std::vector<std::string>& la,
                    const std::vector<std::string>& lb, std::size_t i, std::vector<bool>& used, VarMap& fwd,
                    VarMap& bwd) {
  if (i == a.size()) return true;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j] || la[i] != lb[j] || !same_shape(a[i], b[j])) continue;
    VarMap f2 = fwd, b2 = bwd;
    if (!extend_bijection(a[i], b[j], f2, b2)) continue;
    used[j] = true;
    if (variant_search(a, b, la, lb, i + 1, used, f2, b2)) {
      fwd = std::move(f2);
      bwd = std::move(b2);
      return true;
    }
    used[j] = false;
  }
  return false;
}

Atom swapped(const Atom& eq) {
  auto l = eq.lhs();
  auto r = eq.rhs();
  return Atom::equality(std::vector<Term>(r.begin(), r.end()), std::vector<Term>(l.begin(), l.end()));
}

bool subsume_search(const std::vector<Literal>& g, const std::vector<Literal>& s, std::size_t i,
                    const Substitution& sigma) {
  if (i == g.size()) return true;
  const Literal& lg = g[i];
  for (const auto& ls : s) {
    if (ls.positive != lg.positive || ls.atom.is_equality() != lg.atom.is_equality()) continue;
    Substitution trial = sigma;
    if (match(lg.atom, ls.atom, trial) && subsume_search(g, s, i + 1, trial)) return true;
    if (lg.atom.is_equality()) {
      Substitution trial2 = sigma;
      if (match(swapped(lg.atom), ls.atom, trial2) && subsume_search(g, s, i + 1, trial2)) return true;
    }
  }
  return false;
}

}  // namespace

std::string canonical_key(const Clause& c) {
  std::vector<std::string> labels = coloured_labels(c);
  std::sort(labels.begin(), labels.end());
  std::string key;
  for (const auto& s : labels) key += s + ";";
  return key;
}

Clause canonical_form(const Clause& c) {
  std::vector<std::string> labels = coloured_labels(c);
  std::vector<std::size_t> order(c.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  std::vector<Literal> lits;
  for (auto i : order) lits.push_back(c.literals()[i]);
  Substitution s;
  int next = 1;
  for (const auto& l : lits)
    for (const auto& t : l.atom.args())
      if (t.is_variable() && !s.lookup(t.name())) s.assign(t.name(), Term::variable("V" + std::to_string(next++)));
  return apply_substitution(Clause(lits), s);
}

bool is_variant(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  if (a == b) return true;
  std::vector<std::string> la = coloured_labels(a), lb = coloured_labels(b);
  std::vector<std::string> sa = la, sb = lb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  std::vector<bool> used(b.size(), false);
  VarMap fwd, bwd;
  return variant_search(a.literals(), b.literals(), la, lb, 0, used, fwd, bwd);
}

bool is_tautology(const Clause& c) {
  const auto& lits = c.literals();
  for (const auto& l : lits) {
    if (!l.atom.is_equality()) continue;
    auto lhs = l.atom.lhs();
    auto rhs = l.atom.rhs();
    if (l.positive) {
      if (std::equal(lhs.begin(), lhs.end(), rhs.begin())) return true;
    } else {
      for (std::size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i].is_constant() && rhs[i].is_constant() && lhs[i] != rhs[i]) return true;
    }
  }
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (std::size_t j = 0; j < lits.size(); ++j) {
      if (!lits[i].positive || lits[j].positive) continue;
      if (lits[i].atom == lits[j].atom) return true;
      if (lits[i].atom.is_equality() && lits[j].atom.is_equality() && lits[i].atom == swapped(lits[j].atom))
        return true;
    }
  return false;
}

bool theta_subsumes(const Clause& general, const Clause& specific) {
  // Literals binding the most variables first.
  std::vector<Literal> g = general.literals();
  std::stable_sort(g.begin(), g.end(), [](const Literal& a, const Literal& b) {
    std::set<std::string> va, vb;
    collect_variables(a.atom, va);
    collect_variables(b.atom, vb);
    return va.size() > vb.size();
  });
  return subsume_search(g, specific.literals(), 0, Substitution());
}

Clause simplify_disequalities(const Clause& c) {
  std::vector<Literal> lits = c.literals();
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(lits.begin(), lits.end());
    for (std::size_t i = 0; i < lits.size() && !changed; ++i) {
      Literal& lit = lits[i];
      if (!lit.atom.is_equality()) continue;
      auto lhs = lit.atom.lhs();
      auto rhs = lit.atom.rhs();
      std::vector<Term> l2, r2;
      bool clash = false;
      std::size_t clash_at = 0;
      for (std::size_t k = 0; k < lhs.size(); ++k) {
        if (lhs[k] == rhs[k]) continue;
        if (lhs[k].is_constant() && rhs[k].is_constant() && !clash) {
          clash = true;
          clash_at = k;
        }
        l2.push_back(lhs[k]);
        r2.push_back(rhs[k]);
      }
      if (lit.positive) {
        if (clash) {
          lits.erase(lits.begin() + i);
          changed = true;
        } else if (l2.empty()) {
          Atom marker = Atom::equality(lhs[0], rhs[0]);
          if (lit.atom != marker) {
            lit.atom = marker;
            changed = true;
          }
        } else if (l2.size() != lhs.size()) {
          lit.atom = Atom::equality(l2, r2);
          changed = true;
        }
        continue;
      }
      if (clash) {
        Atom marker = Atom::equality(lhs[clash_at], rhs[clash_at]);
        if (lit.atom != marker) {
          lit.atom = marker;
          changed = true;
        }
        continue;
      }
      if (l2.empty()) {
        lits.erase(lits.begin() + i);
        changed = true;
        continue;
      }
      // First component with a variable: eliminate it, keep the rest as a
      // smaller disequality.
      Term v = l2[0].is_variable() ? l2[0] : r2[0];
      Term t = l2[0].is_variable() ? r2[0] : l2[0];
      l2.erase(l2.begin());
      r2.erase(r2.begin());
      lits.erase(lits.begin() + i);
      if (!l2.empty()) lits.push_back(Literal{Atom::equality(l2, r2), false});
      Substitution s;
      s.bind(v.name(), t);
      for (auto& l : lits) l = s.apply(l);
      changed = true;
    }
  }
  return Clause(std::move(lits));
}

bool ClauseSet::insert(const Clause& c) {
  std::string key = canonical_key(c);
  auto& bucket = index_[key];
  for (std::size_t i : bucket)
    if (is_variant(items_[i], c)) return false;
  bucket.push_back(items_.size());
  items_.push_back(c);
  return true;
}

bool ClauseSet::contains(const Clause& c) const {
  auto it = index_.find(canonical_key(c));
  if (it == index_.end()) return false;
  for (std::size_t i : it->second)
    if (is_variant(items_[i], c)) return true;
  return false;
}

std::string to_string(const Clause& c) {
  if (c.empty()) return "false";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " | ";
    s += to_string(c.literals()[i]);
  }
  return s;
}

}  // namespace swp
