#include <gtest/gtest.h>

#include "swp/error.hpp"
#include "swp/lang/database.hpp"
#include "swp/lang/parser.hpp"
#include "swp/logic/formula.hpp"
#include "test_support.hpp"

namespace swp {
namespace {

TEST(Formula, ConjunctionCollapses) {
  EXPECT_TRUE(Formula::conjunction({}).is_true());
  EXPECT_TRUE(Formula::disjunction({}).is_false());
  Formula a = Formula::atom(Atom::relation("p", {Term::constant("a")}));
  EXPECT_EQ(Formula::conjunction({a}), a);
}

TEST(Formula, PrintsExistentialSugar) {
  Formula f = parse_formula("!exists X: tc(X,X)");
  EXPECT_EQ(to_string(f), "!exists X: tc(X,X)");
}

TEST(Formula, FreeVariablesAndClosure) {
  Formula f = parse_formula("forall Y: p(X,Y) | q(Z)");
  EXPECT_EQ(free_variables(f), (std::set<std::string>{"X", "Z"}));
  EXPECT_TRUE(free_variables(close_universally(f)).empty());
}

TEST(Formula, CnfOfImplication) {
  auto cs = to_clauses(parse_constraint("forall X: r(X) | p(X) -> q(X)"));
  ASSERT_EQ(cs.size(), 2u);
  for (const auto& c : cs) EXPECT_EQ(c.size(), 2u);
}

TEST(Formula, UniversalMatrixRejectsExistential) {
  EXPECT_THROW(universal_matrix(parse_formula("exists X: p(X)")), ValidationError);
  EXPECT_NO_THROW(universal_matrix(parse_formula("!exists X: p(X)")));
}

TEST(Formula, SubstitutionAvoidsCapture) {
  Formula f = parse_formula("forall Y: p(X,Y)");
  Substitution s;
  s.assign("X", Term::variable("Y"));
  Formula g = substitute_terms(f, s);
  EXPECT_EQ(free_variables(g), (std::set<std::string>{"Y"}));
}

TEST(Formula, DnfAndCnfAgreeWithTruthTables) {
  Formula f = parse_formula("(p(a) | !q(a)) & (q(a) | r(a)) & !(p(a) & r(a))");
  Database db;
  db.declare("p", 1);
  db.declare("q", 1);
  db.declare("r", 1);
  for (int m = 0; m < 8; ++m) {
    Database b = db;
    if (m & 1) b.insert("p", {"a"});
    if (m & 2) b.insert("q", {"a"});
    if (m & 4) b.insert("r", {"a"});
    bool direct = test::naive_holds(f, b);
    bool via_cnf = test::naive_holds(Formula::from_clauses(to_clauses(f)), b);
    std::vector<Formula> ds;
    for (const auto& conj : to_dnf(f)) {
      std::vector<Formula> ls;
      for (const auto& l : conj) ls.push_back(Formula::literal(l));
      ds.push_back(Formula::conjunction(ls));
    }
    bool via_dnf = test::naive_holds(Formula::disjunction(ds), b);
    EXPECT_EQ(direct, via_cnf) << m;
    EXPECT_EQ(direct, via_dnf) << m;
  }
}

TEST(Formula, FoldConstants) {
  Formula f = Formula::conjunction({Formula::truth(), Formula::disjunction({Formula::falsity(), Formula::truth()})});
  EXPECT_TRUE(fold_constants(f).is_true());
}

}  // namespace
}  // namespace swp
