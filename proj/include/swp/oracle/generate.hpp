#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swp/lang/database.hpp"
#include "swp/lang/update.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

struct GenConfig {
  std::size_t domain_size = 3;
  std::map<std::string, std::size_t> relations = {{"p", 1}, {"r", 2}, {"s", 1}};
  int max_depth = 3;
  std::uint64_t seed = 1;
};

struct GeneratedCase {
  Database db;
  Update update;
  Formula constraint;  // a single range-restricted clause
};

// Constants a, b, c, ... (then k<n>).
std::vector<std::string> domain_constants(std::size_t n);

// Seed-deterministic triple. Qualifications are range restricted and may be
// disjunctive or mention their own target; conditions are clauses.
GeneratedCase generate_case(const GenConfig& cfg);

}  // namespace swp
