#include <gtest/gtest.h>

#include <set>

#include "swp/deductive/delta.hpp"
#include "swp/error.hpp"
#include "swp/lang/parser.hpp"
#include "test_support.hpp"

namespace swp {
namespace {

std::set<std::string> delta_rules(const DeltaResult& d) {
  std::set<std::string> out;
  for (const auto& pr : d.delta_rules) out.insert(rule_key(pr.rule));
  return out;
}

std::set<std::string> keys(const std::string& text) {
  std::set<std::string> out;
  // delta_ names are reserved in input, so expected rules go through dlt_.
  std::string t = text;
  for (std::size_t at; (at = t.find("delta_")) != std::string::npos;) t.replace(at, 6, "dlt_");
  DatalogProgram prog = parse_program(t);
  for (const auto& r : prog.rules()) {
    std::string k = rule_key(r);
    for (std::size_t at; (at = k.find("dlt_")) != std::string::npos;) k.replace(at, 4, "delta_");
    out.insert(k);
  }
  return out;
}

const Formula kAcyclic = parse_constraint("!exists X: tc(X,X)");

TEST(Delta, GroundInsertSaturation) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  auto ins = ground_inserts(parse_update(test::read_data("insert_arc_db.upd")));
  ASSERT_TRUE(ins);
  DeltaResult d = delta_saturation(p, *ins, kAcyclic);
  EXPECT_FALSE(d.safe);
  EXPECT_EQ(delta_rules(d), keys("delta_tc(d,b). delta_tc(d,Y) :- tc(b,Y). delta_tc(X,Y) :- arc(X,Z), delta_tc(Z,Y)."));
  EXPECT_EQ(to_string(d.wp), "!exists X: delta_tc(X,X)");
  ASSERT_EQ(d.pruned.size(), 1u);
}

TEST(Delta, ReentrantRuleKeptOnRequest) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  DeltaOptions o;
  o.keep_reentrant = true;
  DeltaResult d = delta_saturation(p, *ground_inserts(parse_update(test::read_data("insert_arc_db.upd"))), kAcyclic, o);
  EXPECT_EQ(d.delta_rules.size(), 4u);
  EXPECT_TRUE(delta_rules(d).count(*keys("delta_tc(d,Y) :- delta_tc(b,Y).").begin()));
}

TEST(Delta, SeveralInsertedAtoms) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  auto ins = ground_inserts(parse_update("insert arc(a,b); insert arc(b,c)"));
  ASSERT_TRUE(ins);
  EXPECT_EQ(ins->size(), 2u);
  DeltaResult d = delta_saturation(p, *ins, kAcyclic);
  EXPECT_GE(d.stats.step3_rounds, 2);
  EXPECT_TRUE(delta_rules(d).count(*keys("delta_tc(a,Y) :- delta_tc(b,Y).").begin()));
}

TEST(Delta, QualifiedInsert) {
  DatalogProgram p = parse_program(test::read_data("tc_path.dl"));
  DeltaResult d = delta_qualified_insert(p, parse_update(test::read_data("insert_path_into_arc.upd")), kAcyclic);
  EXPECT_EQ(delta_rules(d), keys("delta_tc(X,Y) :- edge(X,Y)."
                                 "delta_tc(X,Y) :- edge(X,Z), tc(Z,Y)."
                                 "delta_tc(X,Y) :- edge(X,Z), delta_tc(Z,Y)."
                                 "delta_tc(X,Y) :- arc(X,Z), delta_tc(Z,Y)."));
}

TEST(Delta, SafeWhenConstraintIndependent) {
  DatalogProgram p = parse_program(test::read_data("tc_path.dl"));
  DeltaResult d = delta_saturation(p, {Atom::relation("body", {Term::constant("a"), Term::constant("a")})}, kAcyclic);
  EXPECT_TRUE(d.safe);
  EXPECT_TRUE(d.wp.is_true());
}

TEST(Delta, NonLinearRejected) {
  DatalogProgram p = parse_program(test::read_data("nonlinear.dl"));
  try {
    delta_saturation(p, *ground_inserts(parse_update(test::read_data("insert_arc_db.upd"))), kAcyclic);
    FAIL();
  } catch (const UnsupportedError& e) {
    EXPECT_NE(std::string(e.what()).find("non-linear"), std::string::npos);
  }
}

TEST(Delta, DerivedTargetRejected) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  EXPECT_THROW(delta_saturation(p, {Atom::relation("tc", {Term::constant("a"), Term::constant("b")})}, kAcyclic),
               UnsupportedError);
}

TEST(Delta, ConstraintShapeChecked) {
  EXPECT_THROW(denial_atom(parse_constraint("!tc(X,Y) | i(X,Y)")), ValidationError);
  EXPECT_EQ(to_string(denial_atom(kAcyclic)), "tc(X,X)");
}

TEST(Delta, GroundInsertsRecognized) {
  EXPECT_FALSE(ground_inserts(parse_update("foreach X, Y: edge(X,Y) do insert arc(X,Y)")));
  EXPECT_FALSE(ground_inserts(parse_update("insert arc(a,b); insert edge(a,b)")));
  EXPECT_FALSE(ground_inserts(parse_update("delete arc(a,b)")));
}

TEST(Delta, ProvenancePrinted) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  DeltaResult d = delta_saturation(p, *ground_inserts(parse_update(test::read_data("insert_arc_db.upd"))), kAcyclic);
  std::string text = to_string(d);
  EXPECT_NE(text.find("% step2 resolvent of rule 1 with arc(d,b)"), std::string::npos);
  EXPECT_NE(text.find("% step3"), std::string::npos);
}

}  // namespace
}  // namespace swp
