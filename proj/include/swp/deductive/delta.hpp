#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swp/datalog/program.hpp"
#include "swp/lang/update.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

struct ProvenancedRule {
  Rule rule;
  std::string provenance;
};

struct DeltaStats {
  int step2_rounds = 0;
  int step3_rounds = 0;
  std::size_t max_target_atoms = 0;  // most updated-relation atoms in one seed rule body
};

struct DeltaResult {
  // The update cannot violate the constraint; no delta program is needed.
  bool safe = false;
  std::string safe_reason;
  Formula wp;                // !exists X: delta_t(X)
  DatalogProgram program;    // input rules plus delta_rules
  std::vector<ProvenancedRule> delta_rules;
  std::vector<std::string> pruned;  // removed rules with reasons
  DeltaStats stats;
};

struct DeltaOptions {
  // Drop rules whose body mentions a predicate with no derivation.
  bool prune_underivable = true;
  // Keep third-step rules from the second resolution round on when a single
  // atom is inserted.
  bool keep_reentrant = false;
};

inline std::string delta_name(const std::string& q) { return "delta_" + q; }

// Checks that c is a single negative literal !t(s) and returns that atom.
// Throws ValidationError otherwise.
Atom denial_atom(const Formula& c);

// Ground atoms inserted by an update made only of inserts of single constant
// tuples into one relation; nothing otherwise.
std::optional<std::vector<Atom>> ground_inserts(const Update& u);

// Resolution-based saturation for ground inserts into an EDB relation under
// a linear program. Throws UnsupportedError for non-linear programs or a
// derived target.
DeltaResult delta_saturation(const DatalogProgram& p, const std::vector<Atom>& inserts, const Formula& c,
                             const DeltaOptions& opts = {});

// Delta rules for foreach X: phi(X) do insert r(X), phi a conjunction of
// positive literals. A single derived phi atom is unfolded one level and its
// recursive residual folded back into the delta relation. Throws
// UnsupportedError for negated derived atoms in phi or negated dependents.
DeltaResult delta_qualified_insert(const DatalogProgram& p, const Update& u, const Formula& c,
                                   const DeltaOptions& opts = {});

// .dl text with the provenance of each delta rule as a comment.
std::string to_string(const DeltaResult& d);

// Shared by both constructions.
Formula delta_denial(const Atom& t);  // !exists X: delta_t(X)
std::string rule_key(const Rule& r);
void prune_underivable(DeltaResult& d);

}  // namespace swp
