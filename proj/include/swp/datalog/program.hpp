#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swp/logic/term.hpp"

namespace swp {

enum class PredKind : std::uint8_t { kEdb, kIdb };

struct PredInfo {
  std::size_t arity = 0;
  PredKind kind = PredKind::kEdb;
};

// Predicate symbol table shared by all artifacts of a session.
class Schema {
 public:
  // Registers pred; throws ValidationError on an arity clash. An existing IDB
  // entry stays IDB.
  void declare(const std::string& pred, std::size_t arity, PredKind kind = PredKind::kEdb);
  bool contains(const std::string& pred) const { return preds_.count(pred) > 0; }
  const PredInfo* find(const std::string& pred) const;
  bool is_idb(const std::string& pred) const;
  const std::map<std::string, PredInfo>& entries() const { return preds_; }

 private:
  std::map<std::string, PredInfo> preds_;
};

struct Rule {
  Atom head;
  std::vector<Literal> body;  // empty for facts

  friend bool operator==(const Rule&, const Rule&) = default;
};

std::string to_string(const Rule& r);
std::set<std::string> rule_variables(const Rule& r);
// Throws ValidationError unless every head variable and every variable of a
// negative or equality literal occurs in a positive relational body literal.
void check_safety(const Rule& r);
// Substitutes var = const body equalities into the rule and drops trivially
// true ones; returns nothing when some equality is false.
std::optional<Rule> simplify_rule(const Rule& r);

class DatalogProgram {
 public:
  DatalogProgram() = default;

  // Adds a rule, registering its head as IDB; validates arity and safety.
  void add_rule(Rule r);
  void declare(const std::string& pred, std::size_t arity, PredKind kind = PredKind::kEdb);
  const std::vector<Rule>& rules() const { return rules_; }
  const Schema& schema() const { return schema_; }
  bool is_idb(const std::string& pred) const { return schema_.is_idb(pred); }
  bool empty() const { return rules_.empty(); }
  std::vector<const Rule*> rules_for(const std::string& pred) const;

 private:
  std::vector<Rule> rules_;
  Schema schema_;
};

std::string to_string(const DatalogProgram& p);

}  // namespace swp
