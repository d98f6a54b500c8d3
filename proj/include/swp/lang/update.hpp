#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swp/logic/formula.hpp"

namespace swp {

// Update program: foreach-insert, foreach-delete, sequence, conditional, skip.
// For insert/delete the inserted tuple is target_args, a permutation of vars.
// A condition is stored as its quantifier-free universal matrix.
class Update {
 public:
  enum class Kind : std::uint8_t { kInsert, kDelete, kSeq, kIf, kSkip };

  Update();  // skip
  static Update insert(std::vector<std::string> vars, Formula qual, std::string target,
                       std::vector<std::string> target_args = {}, bool snapshot = false);
  static Update remove(std::vector<std::string> vars, Formula qual, std::string target,
                       std::vector<std::string> target_args = {});
  static Update seq(Update first, Update second);
  static Update conditional(Formula cond, Update then_branch, std::optional<Update> else_branch);
  static Update skip();

  Kind kind() const;
  bool is_atomic() const { return kind() == Kind::kInsert || kind() == Kind::kDelete; }
  const std::vector<std::string>& vars() const;
  const Formula& qual() const;
  const std::string& target() const;
  const std::vector<std::string>& target_args() const;
  // Marks the copy into a snapshot relation introduced by normalization.
  bool is_snapshot() const;
  const Formula& cond() const;
  const Update& first() const;   // seq first, if then
  const Update& second() const;  // seq second, if else
  bool has_else() const;

  friend bool operator==(const Update& a, const Update& b);

 private:
  struct Node;
  explicit Update(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Update& u);

std::set<std::string> update_constants(const Update& u);
// Predicates read or written, with arities.
std::map<std::string, std::size_t> update_predicates(const Update& u);
// Predicates written by insert/delete.
std::set<std::string> updated_predicates(const Update& u);
int update_depth(const Update& u);

}  // namespace swp
