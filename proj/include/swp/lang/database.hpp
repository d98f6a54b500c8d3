#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace swp {

using Tuple = std::vector<std::string>;

// Finite named relations of constant tuples.
class Database {
 public:
  // Registers pred with the given arity; throws ValidationError on a clash.
  void declare(const std::string& pred, std::size_t arity);
  bool insert(const std::string& pred, const Tuple& t);
  bool erase(const std::string& pred, const Tuple& t);
  bool contains(const std::string& pred, const Tuple& t) const;
  const std::set<Tuple>& relation(const std::string& pred) const;
  std::optional<std::size_t> arity(const std::string& pred) const;
  std::vector<std::string> predicates() const;
  std::set<std::string> active_domain() const;
  std::size_t fact_count() const;

  friend bool operator==(const Database&, const Database&) = default;

 private:
  struct Relation {
    std::size_t arity = 0;
    std::set<Tuple> tuples;
    friend bool operator==(const Relation&, const Relation&) = default;
  };
  std::map<std::string, Relation> rels_;
};

// Sorted fact listing in .db syntax.
std::string to_string(const Database& db);

}  // namespace swp
