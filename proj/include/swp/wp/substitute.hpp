#pragma once

#include <string>
#include <vector>

#include "swp/lang/update.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

enum class SubstMode : std::uint8_t {
  kAllUnion,  // r(s) -> r(s) | phi(s)
  kAllDiff,   // r(s) -> r(s) & !phi(s)
  kPosUnion,  // positive occurrences only: r(s) -> r(s) | phi(s)
  kNegUnion,  // negative occurrences only: !r(s) -> !r(s) | phi(s)
};

// Replaces occurrences of r(s) as selected by mode; phi(s) instantiates the
// variables params (positionally) with s. Throws ValidationError on an arity
// mismatch.
Formula substitute(const Formula& c, const std::string& r, SubstMode mode, const std::vector<std::string>& params,
                   const Formula& phi);

// Predicate renaming performed by a snapshot copy: every target occurrence
// becomes the source relation.
Formula snapshot_substitute(const Formula& c, const Update& snapshot);

// Weakest precondition for normalized updates: insert c[r->r|phi],
// delete c[r->r-phi], sequence wp(i1, wp(i2, c)), conditional
// (cond & wp1) | (!cond & wp2) with cond closed.
Formula wp_full(const Update& u, const Formula& c);

}  // namespace swp
