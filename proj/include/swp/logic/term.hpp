#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace swp {

// A variable or a constant. Variables start with an uppercase letter or '_'.
class Term {
 public:
  enum class Kind : std::uint8_t { kVariable, kConstant };

  Term() = default;
  static Term variable(std::string name) { return Term(Kind::kVariable, std::move(name)); }
  static Term constant(std::string name) { return Term(Kind::kConstant, std::move(name)); }
  // Classifies by spelling.
  static Term parse(const std::string& name);

  bool is_variable() const { return kind_ == Kind::kVariable; }
  bool is_constant() const { return kind_ == Kind::kConstant; }
  const std::string& name() const { return name_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}
  Kind kind_ = Kind::kConstant;
  std::string name_;
};

bool is_variable_name(const std::string& name);

// Relational atom p(t1..tn) or tuple equality (s1..sk) = (t1..tk).
// An equality stores lhs followed by rhs in args().
class Atom {
 public:
  Atom() = default;
  static Atom relation(std::string pred, std::vector<Term> args);
  static Atom equality(std::vector<Term> lhs, std::vector<Term> rhs);
  static Atom equality(Term lhs, Term rhs) { return equality(std::vector<Term>{lhs}, std::vector<Term>{rhs}); }

  bool is_equality() const { return equality_; }
  const std::string& predicate() const { return pred_; }
  const std::vector<Term>& args() const { return args_; }
  std::vector<Term>& mutable_args() { return args_; }
  // Relational arity, or tuple width for equalities.
  std::size_t arity() const { return equality_ ? args_.size() / 2 : args_.size(); }
  std::span<const Term> lhs() const { return std::span<const Term>(args_).first(arity()); }
  std::span<const Term> rhs() const { return std::span<const Term>(args_).last(arity()); }
  bool is_ground() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom&, const Atom&);

 private:
  std::string pred_;
  std::vector<Term> args_;
  bool equality_ = false;
};

struct Literal {
  Atom atom;
  bool positive = true;

  Literal negated() const { return Literal{atom, !positive}; }
  friend bool operator==(const Literal&, const Literal&) = default;
  // Relational literals first, then by predicate, sign (negative first), arguments.
  friend std::strong_ordering operator<=>(const Literal&, const Literal&);
};

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);

void collect_variables(const Atom& a, std::set<std::string>& out);
void collect_constants(const Atom& a, std::set<std::string>& out);

}  // namespace swp
