#pragma once

#include <string>

#include "swp/datalog/program.hpp"
#include "swp/lang/database.hpp"
#include "swp/lang/update.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

// All parse functions check arities against schema when one is given and
// register every predicate they meet. Reserved generated names (delta_*,
// *_prime, t_del_*) are rejected.

// Formula as written, quantifiers included.
Formula parse_formula(const std::string& text, Schema* schema = nullptr);
// Universal constraint: returns the quantifier-free matrix. Existentials throw.
Formula parse_constraint(const std::string& text, Schema* schema = nullptr);
Update parse_update(const std::string& text, Schema* schema = nullptr);
DatalogProgram parse_program(const std::string& text, Schema* schema = nullptr);
Database parse_database(const std::string& text, Schema* schema = nullptr);

bool is_reserved_symbol(const std::string& pred);

}  // namespace swp
