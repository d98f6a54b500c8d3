#pragma once

#include <string>
#include <vector>

#include "swp/datalog/program.hpp"
#include "swp/lang/database.hpp"

namespace swp {

using Interpretation = Database;

// Strata in evaluation order; each entry lists the predicates whose
// extension was completed at that point.
struct EvalLog {
  std::vector<std::vector<std::string>> completed;
  int rounds = 0;
};

// Perfect model of p over b: stratum by stratum, semi-naive within a stratum.
// Facts of b for IDB predicates are kept as extra base facts.
Interpretation evaluate(const DatalogProgram& p, const Database& b, EvalLog* log = nullptr);

}  // namespace swp
