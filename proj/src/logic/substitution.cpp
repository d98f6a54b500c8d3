#include "swp/logic/substitution.hpp"

namespace swp {

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, const Term& t) {
  if (t.is_variable() && t.name() == var) return;
  for (auto& [v, u] : map_)
    if (u.is_variable() && u.name() == var) u = t;
  map_[var] = t;
}

Term Substitution::apply(const Term& t) const {
  if (!t.is_variable()) return t;
  const Term* b = lookup(t.name());
  return b ? *b : t;
}

Atom Substitution::apply(const Atom& a) const {
  Atom out = a;
  for (auto& t : out.mutable_args()) t = apply(t);
  return out;
}

Literal Substitution::apply(const Literal& l) const { return Literal{apply(l.atom), l.positive}; }

std::optional<Substitution> mgu(const Atom& a1, const Atom& a2) {
  if (a1.is_equality() || a2.is_equality()) return std::nullopt;
  if (a1.predicate() != a2.predicate() || a1.args().size() != a2.args().size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a1.args().size(); ++i) {
    Term x = s.apply(a1.args()[i]);
    Term y = s.apply(a2.args()[i]);
    if (x == y) continue;
    if (x.is_variable())
      s.bind(x.name(), y);
    else if (y.is_variable())
      s.bind(y.name(), x);
    else
      return std::nullopt;
  }
  return s;
}

bool match(const Atom& pattern, const Atom& target, Substitution& sigma) {
  if (pattern.is_equality() != target.is_equality() || pattern.predicate() != target.predicate() ||
      pattern.args().size() != target.args().size())
    return false;
  Substitution trial = sigma;
  for (std::size_t i = 0; i < pattern.args().size(); ++i) {
    const Term& p = pattern.args()[i];
    const Term& t = target.args()[i];
    if (p.is_variable()) {
      if (const Term* b = trial.lookup(p.name())) {
        if (*b != t) return false;
      } else {
        trial.assign(p.name(), t);
      }
    } else if (p != t) {
      return false;
    }
  }
  sigma = std::move(trial);
  return true;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += v + "->" + t.name();
  }
  return out + "}";
}

}  // namespace swp
