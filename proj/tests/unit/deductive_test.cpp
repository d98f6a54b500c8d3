#include <gtest/gtest.h>

#include <random>
#include <set>

#include "swp/deductive/hypotheses.hpp"
#include "swp/deductive/prime.hpp"
#include "swp/deductive/wp_deductive.hpp"
#include "swp/error.hpp"
#include "swp/lang/parser.hpp"
#include "swp/oracle/exec.hpp"
#include "test_support.hpp"

namespace swp {
namespace {

std::set<std::string> rule_set(const DatalogProgram& p) {
  std::set<std::string> out;
  for (const auto& r : p.rules()) out.insert(to_string(r));
  return out;
}

TEST(Prime, NamesAdvanceGenerations) {
  EXPECT_EQ(primed_name("tc", {}), "tc_prime");
  EXPECT_EQ(primed_name("tc_prime", {}), "tc_prime2");
  EXPECT_EQ(primed_name("tc_prime2", {}), "tc_prime3");
  EXPECT_EQ(primed_name("tc", {"tc_prime"}), "tc_prime2");
}

TEST(Prime, CopiesDependentRules) {
  DatalogProgram p = parse_program(test::read_data("tc_path.dl"));
  PrimedProgram pp = prime_program(p, "tc");
  EXPECT_EQ(pp.program.rules().size(), 7u);
  EXPECT_EQ(pp.primed_of, (std::map<std::string, std::string>{{"tc", "tc_prime"}}));
  std::set<std::string> rules = rule_set(pp.program);
  EXPECT_TRUE(rules.count("tc_prime(X,Y) :- arc(X,Y)."));
  EXPECT_TRUE(rules.count("tc_prime(X,Y) :- arc(X,Z), tc_prime(Z,Y)."));
  EXPECT_THROW(prime_program(p, "unknown"), ValidationError);
}

TEST(WpDeductive, InsertIntoDerivedRelation) {
  DatalogProgram p = parse_program(test::read_data("tc_path.dl"));
  DeductiveWp d = wp_deductive(parse_update(test::read_data("insert_path_into_tc.upd")), parse_constraint(test::read_data("tc_in_i.con")), p);
  std::set<std::string> added = rule_set(d.program);
  for (const auto& r : rule_set(p)) added.erase(r);
  EXPECT_EQ(added, (std::set<std::string>{"tc_prime(X,Y) :- arc(X,Y).", "tc_prime(X,Y) :- arc(X,Z), tc_prime(Z,Y).",
                                          "tc_prime(X,Y) :- tc(X,Y).", "tc_prime(X,Y) :- path(X,Y)."}));
  EXPECT_EQ(to_string(close_universally(d.formula)), "forall X,Y: !tc_prime(X,Y) | i(X,Y)");
}

TEST(WpDeductive, GroundInsertIntoStoredRelation) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  DeductiveWp d = wp_deductive(parse_update(test::read_data("insert_arc_db.upd")), parse_constraint("!exists X: tc(X,X)"), p);
  std::set<std::string> added = rule_set(d.program);
  for (const auto& r : rule_set(p)) added.erase(r);
  EXPECT_EQ(added.size(), 4u);
  EXPECT_TRUE(added.count("arc_prime(d,b)."));
  EXPECT_TRUE(added.count("tc_prime(X,Y) :- arc_prime(X,Z), tc_prime(Z,Y)."));
}

// Reads c on the model of the result program and compares with executing u.
void expect_wp_matches_execution(const std::string& prog, const std::string& upd, const std::string& con,
                                 const std::vector<std::string>& edb, std::uint64_t seed) {
  DatalogProgram p = parse_program(prog);
  Update u = parse_update(upd);
  Formula c = parse_constraint(con);
  DeductiveWp d = wp_deductive(u, c, p);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 60; ++i) {
    auto nodes = test::node_names(2 + i % 3);
    nodes.push_back("a");
    Database b;
    for (const auto& e : edb) b = test::merge(b, test::random_graph(rng, nodes, 0.25, e));
    bool lhs = test::naive_holds(d.formula, test::naive_model(d.program, b));
    bool rhs = test::naive_holds(c, test::naive_model(p, test::naive_exec(u, b)));
    EXPECT_EQ(lhs, rhs) << upd << "\n" << to_string(b);
  }
}

TEST(WpDeductive, InsertAgreesWithExecution) {
  expect_wp_matches_execution(test::read_data("tc.dl"), "foreach X, Y: e(X,Y) do insert arc(X,Y)",
                              "!exists X: tc(X,X)", {"arc", "e"}, 3);
}

TEST(WpDeductive, DeleteAgreesWithExecution) {
  expect_wp_matches_execution(test::read_data("tc.dl") + "g(X,Y) :- e(X,Y), !tc(Y,X).",
                              "foreach X, Y: e(X,Y) do delete arc(X,Y)", "forall X, Y: !tc(X,Y) | g(X,Y) | e(X,Y)",
                              {"arc", "e"}, 5);
}

TEST(WpDeductive, SequenceAndConditionAgreeWithExecution) {
  expect_wp_matches_execution(test::read_data("tc.dl"),
                              "if !arc(a,a) then (foreach X, Y: e(X,Y) do insert arc(X,Y); "
                              "foreach X, Y: e(Y,X) & e(X,Y) do delete arc(X,Y))",
                              "!exists X: tc(X,X)", {"arc", "e"}, 11);
}

TEST(WpDeductive, DeleteUsesAuxiliaryRelation) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  DeductiveWp d =
      wp_deductive(parse_update("foreach X, Y: e(X,Y) do delete arc(X,Y)"), parse_constraint("!exists X: tc(X,X)"), p);
  bool aux = false;
  for (const auto& r : d.program.rules()) aux |= r.head.predicate().starts_with("t_del_");
  EXPECT_TRUE(aux);
}

TEST(WpDeductive, DeleteFromDerivedRejected) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  EXPECT_THROW(wp_deductive(parse_update("foreach X, Y: arc(X,Y) do delete tc(X,Y)"),
                            parse_constraint("!exists X: tc(X,X)"), p),
               UnsupportedError);
}

TEST(Hypotheses, QualificationDependingOnTarget) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  Update u = parse_update(test::read_data("insert_tc_into_arc.upd"));
  HypothesisReport h = check_hypotheses(p, u, parse_constraint("!exists X: tc(X,X)"));
  ASSERT_FALSE(h.ok());
  EXPECT_NE(h.violations.front().find("H2"), std::string::npos);
  EXPECT_THROW(wp_deductive(u, parse_constraint("!exists X: tc(X,X)"), p), UnsupportedError);
}

TEST(Hypotheses, TcPathSettingPasses) {
  DatalogProgram p = parse_program(test::read_data("tc_path.dl"));
  EXPECT_TRUE(check_hypotheses(p, parse_update(test::read_data("insert_path_into_tc.upd")), parse_constraint(test::read_data("tc_in_i.con"))).ok());
}

TEST(ExecDeductive, InsertIntoStoredRelation) {
  DatalogProgram p = parse_program(test::read_data("tc.dl"));
  Database b = parse_database(test::read_data("chain.db"));
  Database post = exec_update_deductive(parse_update("foreach X, Y: tc(X,Y) & X = a do insert arc(X,Y)"), p, b);
  EXPECT_TRUE(post.contains("arc", {"a", "d"}));
  EXPECT_FALSE(post.arity("tc") && !post.relation("tc").empty());
}

}  // namespace
}  // namespace swp
