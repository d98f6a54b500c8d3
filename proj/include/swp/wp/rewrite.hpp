#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "swp/lang/update.hpp"
#include "swp/logic/clause.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

// Boolean combination of clauses; the result shape of the rewriting system.
struct ClauseTree {
  enum class Kind : std::uint8_t { kTrue, kFalse, kLeaf, kAnd, kOr, kNot };
  Kind kind = Kind::kTrue;
  Clause clause;
  std::vector<ClauseTree> kids;

  static ClauseTree leaf(Clause c) { return ClauseTree{Kind::kLeaf, std::move(c), {}}; }
  Formula to_formula() const;
  // Leaves when the tree is a conjunction of clauses (or a single clause / true).
  std::optional<std::vector<Clause>> conjuncts() const;
  std::size_t literal_count() const;
  std::size_t leaf_count() const;
};

std::string to_string(const ClauseTree& t);

struct TraceStep {
  int id = 0;
  int parent = -1;  // step that created this redex; -1 for the root
  std::string rule;
  std::string redex;
  std::string result;
};

enum class DropReason : std::uint8_t { kTautology, kSubsumed };

struct DroppedClause {
  Clause clause;
  DropReason reason;
  std::optional<Clause> subsumer;  // clause of the constraint, for kSubsumed
};

std::string to_string(DropReason r);

struct RewriteOptions {
  std::size_t max_conjuncts = 10000;
  bool record_trace = true;
  // Random redex selection; leftmost-innermost when unset.
  std::optional<std::uint64_t> random_seed;
};

struct SwpReport {
  ClauseTree rewritten;  // saturated result, before drops
  ClauseTree swp;        // after drops, constants folded
  std::vector<DroppedClause> dropped;
  std::vector<TraceStep> trace;
  std::uint64_t steps = 0;
  std::uint64_t bound = 0;
  std::size_t generated = 0;  // clause leaves created during rewriting
  std::vector<Clause> constraint;

  bool conjunctive() const { return swp.conjuncts().has_value(); }
  Formula swp_formula() const { return swp.to_formula(); }
  Formula rewritten_formula() const { return rewritten.to_formula(); }
};

// Saturates wp(u, c) under R1-R9, a tautology under a pending update
// reducing to true. Then drops tautologies and conjuncts
// subsumed by a clause of c (positive polarity only). u must be normalized.
// Throws BlowupError past opts.max_conjuncts.
SwpReport rewrite_swp(const Update& u, const Formula& c, const RewriteOptions& opts = {});

// Structural upper bound on the number of rule applications for u on clauses.
std::uint64_t rewrite_bound(const Update& u, const std::vector<Clause>& clauses);

}  // namespace swp
