#pragma once

#include <string>
#include <vector>

#include "swp/datalog/program.hpp"
#include "swp/lang/update.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

struct HypothesisReport {
  std::vector<std::string> violations;  // each prefixed "H1:" or "H2:"
  bool ok() const { return violations.empty(); }
};

// H1: qualifications are conjunctions of literals and every predicate of c,
// the qualifications and the conditions agrees with p's schema. H2: no
// qualification literal of an insert or delete on r depends on r.
HypothesisReport check_hypotheses(const DatalogProgram& p, const Update& u, const Formula& c);

}  // namespace swp
