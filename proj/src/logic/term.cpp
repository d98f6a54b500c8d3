#include "swp/logic/term.hpp"

#include <cctype>

namespace swp {

bool is_variable_name(const std::string& name) {
  return !name.empty() && (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_');
}

Term Term::parse(const std::string& name) {
  return is_variable_name(name) ? variable(name) : constant(name);
}

Atom Atom::relation(std::string pred, std::vector<Term> args) {
  Atom a;
  a.pred_ = std::move(pred);
  a.args_ = std::move(args);
  return a;
}

Atom Atom::equality(std::vector<Term> lhs, std::vector<Term> rhs) {
  Atom a;
  a.pred_ = "=";
  a.equality_ = true;
  a.args_ = std::move(lhs);
  a.args_.insert(a.args_.end(), rhs.begin(), rhs.end());
  return a;
}

bool Atom::is_ground() const {
  for (const auto& t : args_)
    if (t.is_variable()) return false;
  return true;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (a.equality_ != b.equality_) return a.equality_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (auto c = a.pred_ <=> b.pred_; c != 0) return c;
  if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
  return a.args_ <=> b.args_;
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (a.atom.is_equality() != b.atom.is_equality())
    return a.atom.is_equality() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (auto c = a.atom.predicate() <=> b.atom.predicate(); c != 0) return c;
  if (a.positive != b.positive) return a.positive ? std::strong_ordering::greater : std::strong_ordering::less;
  return a.atom <=> b.atom;
}

std::string to_string(const Term& t) { return t.name(); }

namespace {

std::string tuple_string(std::span<const Term> ts) {
  if (ts.size() == 1) return ts[0].name();
  std::string s = "(";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) s += ",";
    s += ts[i].name();
  }
  return s + ")";
}

std::string equality_string(const Atom& a, bool positive) {
  return tuple_string(a.lhs()) + (positive ? " = " : " != ") + tuple_string(a.rhs());
}

}  // namespace

std::string to_string(const Atom& a) {
  if (a.is_equality()) return equality_string(a, true);
  if (a.args().empty()) return a.predicate();
  std::string s = a.predicate() + "(";
  for (std::size_t i = 0; i < a.args().size(); ++i) {
    if (i) s += ",";
    s += a.args()[i].name();
  }
  return s + ")";
}

std::string to_string(const Literal& l) {
  if (l.atom.is_equality()) return equality_string(l.atom, l.positive);
  return (l.positive ? "" : "!") + to_string(l.atom);
}

void collect_variables(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args())
    if (t.is_variable()) out.insert(t.name());
}

void collect_constants(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args())
    if (t.is_constant()) out.insert(t.name());
}

}  // namespace swp
