#pragma once

#include <set>
#include <string>

#include "swp/lang/update.hpp"

namespace swp {

struct NormalizeOptions {
  // Replace target occurrences in a qualification by a snapshot copy. Off in
  // deductive mode, where such updates violate the hypotheses instead.
  bool snapshot = true;
  // Require every foreach variable to be range-restricted in each disjunct.
  bool check_safety = true;
};

// Splits qualifications into DNF disjuncts (one foreach each), conditions into
// nested ifs over their clauses, and moves target occurrences to snapshots.
// taken lists names the snapshot relations must avoid.
Update normalize_update(const Update& u, const std::set<std::string>& taken = {}, NormalizeOptions opts = {});

// True iff every qualification is a conjunction of literals without its target
// and every condition is a single clause. why receives the first violation.
bool is_normalized(const Update& u, std::string* why = nullptr);

// Snapshot relations introduced by normalize_update.
std::set<std::string> snapshot_relations(const Update& u);

bool is_literal_conjunction(const Formula& f);
bool is_clause_formula(const Formula& f);
std::vector<Literal> conjunction_literals(const Formula& f);

// Throws ValidationError unless every variable of vars is bound by a positive
// relational literal or an equality chain to a constant or bound variable.
void check_range_restricted(const std::vector<std::string>& vars, const std::vector<Literal>& conj);

}  // namespace swp
