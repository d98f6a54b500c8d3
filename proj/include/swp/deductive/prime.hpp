#pragma once

#include <map>
#include <set>
#include <string>

#include "swp/datalog/program.hpp"

namespace swp {

struct PrimedProgram {
  DatalogProgram program;
  std::map<std::string, std::string> primed_of;  // every predicate depending on r
};

// q -> q_prime; an already primed q_prime<n> moves to the next generation.
// Names in taken are skipped.
std::string primed_name(const std::string& q, const std::set<std::string>& taken);

// p plus a primed copy of every rule whose head depends on r. When r is EDB
// its primed symbol is declared IDB without rules. Throws ValidationError when
// r is not declared.
PrimedProgram prime_program(const DatalogProgram& p, const std::string& r, const std::set<std::string>& taken = {});

}  // namespace swp
