#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "swp/datalog/program.hpp"

namespace swp {

// Reflexive-transitive closure of "appears in the body of a rule defining".
// Throws ValidationError when q or r is not declared in p.
bool depends(const DatalogProgram& p, const std::string& q, const std::string& r);
// Every declared predicate q with depends(p, q, r).
std::set<std::string> dependents(const DatalogProgram& p, const std::string& r);

struct Stratification {
  std::map<std::string, int> stratum;            // every declared predicate
  std::vector<std::vector<std::string>> layers;  // predicates per stratum, ascending
};

// Throws UnsupportedError naming a cycle through negation when impossible.
Stratification stratify(const DatalogProgram& p);

// Each body has at most one IDB atom.
bool is_linear(const DatalogProgram& p);

}  // namespace swp
