#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swp/lang/database.hpp"
#include "swp/logic/formula.hpp"

namespace swp {

// Relations over a fixed finite domain; every ground tuple has an index.
class Signature {
 public:
  Signature(std::vector<std::string> domain, std::map<std::string, std::size_t> relations);

  const std::vector<std::string>& domain() const { return domain_; }
  const std::map<std::string, std::size_t>& relations() const { return arity_; }
  std::size_t size() const { return domain_.size(); }
  std::size_t tuple_count() const { return tuples_; }
  bool has_relation(const std::string& rel) const { return arity_.count(rel) > 0; }
  std::size_t arity(const std::string& rel) const;
  std::size_t base(const std::string& rel) const;
  // Domain position of a constant, or -1.
  int element(const std::string& constant) const;
  std::size_t index(const std::string& rel, std::span<const int> args) const;
  std::pair<std::string, std::vector<int>> tuple(std::size_t index) const;
  // Tuple indices of rel.
  std::vector<std::size_t> tuples_of(const std::string& rel) const;

 private:
  std::vector<std::string> domain_;
  std::map<std::string, int> position_;
  std::map<std::string, std::size_t> arity_;
  std::map<std::string, std::size_t> base_;
  std::size_t tuples_ = 0;
};

// Up to 64 instances side by side: word t is the membership of tuple t, one
// bit per instance.
using Lanes = std::vector<std::uint64_t>;

Lanes lanes_from_database(const Signature& sig, const Database& db);
Database lane_database(const Signature& sig, const Lanes& w, int lane);

// Per domain element: the lanes where it is in the active domain, i.e. occurs
// in some tuple or is listed in always.
std::vector<std::uint64_t> active_words(const Signature& sig, const Lanes& w, const std::set<int>& always);

// Formula compiled against a signature. Evaluation uses active-domain
// semantics: quantified variables range over the elements of the instance
// plus the formula's constants. Free variables outside params are closed
// universally.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, const Signature& sig, const std::vector<std::string>& params = {});

  std::uint64_t eval(const Lanes& w, std::span<const int> params = {}) const;
  std::uint64_t eval(const Lanes& w, const std::vector<std::uint64_t>& active, std::span<const int> params) const;
  const std::set<int>& constants() const { return constants_; }

 private:
  struct Node {
    enum class Kind : std::uint8_t { kTrue, kFalse, kAtom, kEq, kNot, kAnd, kOr, kForall };
    Kind kind = Kind::kTrue;
    std::size_t base = 0;
    std::vector<int> args;  // slot when >= 0, element -a-1 otherwise
    std::vector<int> kids;
    std::vector<int> slots;
  };
  int compile(const Formula& f, std::map<std::string, int>& scope);
  std::uint64_t run(int n, const Lanes& w, const std::vector<std::uint64_t>& active, std::vector<int>& env) const;
  std::uint64_t quantify(const Node& n, std::size_t i, const Lanes& w, const std::vector<std::uint64_t>& active,
                         std::vector<int>& env) const;

  const Signature* sig_;
  std::vector<Node> nodes_;
  std::set<int> constants_;
  int root_ = 0;
  int slots_ = 0;
};

// Every instance over a set of free tuples, all other tuples empty, in
// batches of 64.
class InstanceBatches {
 public:
  // Throws CapExceededError when 2^|free| exceeds cap.
  InstanceBatches(const Signature& sig, std::vector<std::size_t> free, std::uint64_t cap = std::uint64_t{1} << 24);

  std::uint64_t instance_count() const { return std::uint64_t{1} << free_.size(); }
  std::uint64_t batch_count() const;
  Lanes batch(std::uint64_t q) const;
  // Lanes in use in every batch.
  std::uint64_t valid_mask() const;
  Database instance(std::uint64_t n) const;

 private:
  const Signature* sig_;
  std::vector<std::size_t> free_;
};

// Truth of the universal closure of f on db under active-domain semantics.
bool eval_sentence(const Formula& f, const Database& db);

}  // namespace swp
