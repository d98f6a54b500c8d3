#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "swp/logic/substitution.hpp"
#include "swp/logic/term.hpp"

namespace swp {

// Universally closed disjunction of literals, kept sorted and duplicate free.
// The empty clause denotes falsity.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return lits_; }
  bool empty() const { return lits_.empty(); }
  std::size_t size() const { return lits_.size(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  std::set<std::string> variables() const;
  std::set<std::string> constants() const;
  // Number of literals on predicate pred with the given sign.
  std::size_t count(const std::string& pred, bool positive) const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) { return a.lits_ <=> b.lits_; }

 private:
  std::vector<Literal> lits_;
};

Clause apply_substitution(const Clause& c, const Substitution& s);

// Renames variables of c that occur in avoid by appending primes.
Clause rename_apart(const Clause& c, const std::set<std::string>& avoid);

// Key that is equal for clauses equal modulo variable renaming, and usually
// different otherwise; use is_variant for the exact test.
std::string canonical_key(const Clause& c);
// Canonical printing form: variables renamed V1, V2, ... in first occurrence order.
Clause canonical_form(const Clause& c);
bool is_variant(const Clause& a, const Clause& b);

bool is_tautology(const Clause& c);
bool theta_subsumes(const Clause& general, const Clause& specific);

// Eliminates (dis)equality literals: x != t substitutes t for x, ground
// disequalities of equal terms vanish, ground equalities of distinct constants
// vanish. Literals that are true (a != b, a = a) are kept so that is_tautology
// reports the clause as valid.
Clause simplify_disequalities(const Clause& c);

// Set of clauses deduplicated modulo variable renaming, in insertion order.
class ClauseSet {
 public:
  // Returns false when a variant is already present.
  bool insert(const Clause& c);
  bool contains(const Clause& c) const;
  const std::vector<Clause>& clauses() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<Clause> items_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

std::string to_string(const Clause& c);

}  // namespace swp
