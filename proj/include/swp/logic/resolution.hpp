#pragma once

#include <string>
#include <vector>

#include "swp/logic/clause.hpp"

namespace swp {

// All simplified binary resolvents of c1 and c2 on predicate r. c2 is renamed
// apart from c1 first (primed names).
std::vector<Clause> binary_resolvents_on(const Clause& c1, const Clause& c2, const std::string& r);

// Union over ordered pairs of S, a clause paired with a renamed copy of itself
// included; duplicates modulo renaming removed.
std::vector<Clause> res_r(const std::vector<Clause>& S, const std::string& r);

}  // namespace swp
