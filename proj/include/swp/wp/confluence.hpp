#pragma once

#include <cstdint>
#include <string>

#include "swp/lang/update.hpp"
#include "swp/logic/formula.hpp"
#include "swp/wp/rewrite.hpp"

namespace swp {

struct ConfluenceVerdict {
  bool confluent = true;
  std::size_t orders = 0;
  // Results that differed syntactically and were compared by enumeration.
  std::size_t enumerated = 0;
  std::string detail;  // first disagreement
};

// Canonical text of a rewrite result: clauses in canonical variable naming,
// children of each connective sorted.
std::string canonical_string(const ClauseTree& t);

// Rewrites under n_orders random redex orders and compares each result with
// the leftmost-innermost one, syntactically first and otherwise by brute-force
// equivalence with extra_constants fresh constants.
ConfluenceVerdict check_confluence_sample(const Update& u, const Formula& c, std::size_t n_orders,
                                          std::uint64_t seed, std::size_t extra_constants = 3);

}  // namespace swp
