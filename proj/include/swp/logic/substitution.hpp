#pragma once

#include <map>
#include <optional>
#include <string>

#include "swp/logic/term.hpp"

namespace swp {

// Finite map from variable names to terms; kept idempotent by construction.
class Substitution {
 public:
  Substitution() = default;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }
  const Term* lookup(const std::string& var) const;

  // Adds var -> t and rewrites existing bindings so the result stays idempotent.
  // Requires that var is unbound and t is already fully applied.
  void bind(const std::string& var, const Term& t);
  // Plain assignment without composition; used by one-way matching where the
  // target's variables are frozen.
  void assign(const std::string& var, const Term& t) { map_[var] = t; }

  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  Literal apply(const Literal& l) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> map_;
};

// Most general unifier of two relational atoms, or nothing.
std::optional<Substitution> mgu(const Atom& a1, const Atom& a2);

// Extends sigma so that sigma(pattern) == target; target is treated as ground.
bool match(const Atom& pattern, const Atom& target, Substitution& sigma);

std::string to_string(const Substitution& s);

}  // namespace swp
