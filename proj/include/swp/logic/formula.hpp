#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "swp/logic/clause.hpp"
#include "swp/logic/substitution.hpp"
#include "swp/logic/term.hpp"

namespace swp {

// Immutable boolean formula over atoms with universal quantifiers. Existential
// quantification is written !forall V: !f. Free variables are implicitly
// universally closed wherever a formula is used as a sentence.
class Formula {
 public:
  enum class Kind : std::uint8_t { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kForall };

  Formula();  // true
  static Formula truth();
  static Formula falsity();
  static Formula atom(Atom a);
  static Formula literal(const Literal& l);
  static Formula negation(Formula f);
  // Singletons collapse to their element; empty lists give true / false.
  static Formula conjunction(std::vector<Formula> fs);
  static Formula disjunction(std::vector<Formula> fs);
  static Formula implication(Formula lhs, Formula rhs);
  // No-op when vars is empty.
  static Formula forall(std::vector<std::string> vars, Formula body);
  static Formula exists(std::vector<std::string> vars, Formula body);
  static Formula from_clause(const Clause& c);
  // Conjunction of the closed clauses.
  static Formula from_clauses(const std::vector<Clause>& cs);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::kTrue; }
  bool is_false() const { return kind() == Kind::kFalse; }
  const Atom& atom_value() const;
  const std::vector<Formula>& children() const;
  const Formula& child() const { return children().front(); }
  const std::vector<std::string>& bound() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> formula_constants(const Formula& f);
// Relational predicates with their arities.
std::map<std::string, std::size_t> formula_predicates(const Formula& f);
bool mentions_predicate(const Formula& f, const std::string& pred);
bool is_quantifier_free(const Formula& f);

// Universal closure over the free variables, in sorted order.
Formula close_universally(const Formula& f);
// Capture-avoiding substitution of free variables.
Formula substitute_terms(const Formula& f, const Substitution& s);
Formula rename_predicates(const Formula& f, const std::map<std::string, std::string>& names);
// Folds true/false constants; otherwise keeps the structure.
Formula fold_constants(const Formula& f);

// Pulls universal quantifiers at positive polarity to the top (renaming bound
// variables apart) and returns the quantifier-free matrix. Double negations
// directly above a quantifier are removed. Throws ValidationError when a
// quantifier has negative polarity (an existential).
Formula universal_matrix(const Formula& f);

// CNF as a clause set. Accepts positive-polarity universals (see universal_matrix).
std::vector<Clause> to_clauses(const Formula& f);
// DNF as a list of conjunctions of literals. f must be quantifier-free.
std::vector<std::vector<Literal>> to_dnf(const Formula& f);

}  // namespace swp
