#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swp/oracle/generate.hpp"

namespace swp {

struct PropertyConfig {
  std::uint64_t seed = 1;
  std::size_t cases = 100;
  std::size_t max_conjuncts = 10000;
  // Random rewrite orders compared per case; 0 skips the confluence check.
  std::size_t confluence_orders = 0;
  std::size_t extra_constants = 1;
  GenConfig gen;  // seed is overwritten per case
};

struct PropertyStats {
  std::size_t cases = 0;
  std::uint64_t instances = 0;
  std::size_t wp_violations = 0;         // B |= wp  <=>  u(B) |= c
  std::size_t swp_violations = 0;        // B |= c  ->  (B |= swp  <=>  u(B) |= c)
  std::size_t weaker_violations = 0;     // B |= wp  ->  B |= swp
  std::size_t normalize_violations = 0;  // u and its normal form agree on the base relations
  std::size_t drop_violations = 0;       // every drop carries a valid justification
  std::size_t bound_violations = 0;      // steps within the structural bound
  std::size_t confluence_violations = 0;
  std::size_t cap_hits = 0;
  std::uint64_t strict_witnesses = 0;    // B |= swp and B |/= wp
  std::uint64_t max_steps = 0;
  std::vector<std::string> failures;     // replayable descriptions

  std::size_t violations() const {
    return wp_violations + swp_violations + weaker_violations + normalize_violations + drop_violations +
           bound_violations + confluence_violations;
  }
};

// Checks one triple exhaustively over every instance of the generator's
// relations on its domain (snapshot relations empty).
void check_case(const GeneratedCase& g, const PropertyConfig& cfg, PropertyStats& stats);

// cases generated triples with seeds seed, seed+1, ...
PropertyStats run_properties(const PropertyConfig& cfg);

}  // namespace swp
