#pragma once

#include "swp/datalog/program.hpp"
#include "swp/lang/update.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

struct DeductiveWp {
  Formula formula;         // read under program
  DatalogProgram program;  // p plus primed and auxiliary rules
};

// Weakest precondition over a rule base. Inserts and deletes prime every
// predicate depending on the target; a delete adds an auxiliary t_del_<n>
// relation under negation. Throws UnsupportedError when the hypotheses fail,
// when deleting from a derived relation, or when the result does not stratify.
DeductiveWp wp_deductive(const Update& u, const Formula& c, const DatalogProgram& p);

}  // namespace swp
