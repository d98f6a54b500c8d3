#include <gtest/gtest.h>

#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"
#include "swp/lang/parser.hpp"
#include "test_support.hpp"

namespace swp {
namespace {

// Every database over p/1 and r/1 on {a,b}.
std::vector<Database> small_databases() {
  std::vector<Database> out;
  for (int m = 0; m < 16; ++m) {
    Database db;
    db.declare("p", 1);
    db.declare("r", 1);
    if (m & 1) db.insert("p", {"a"});
    if (m & 2) db.insert("p", {"b"});
    if (m & 4) db.insert("r", {"a"});
    if (m & 8) db.insert("r", {"b"});
    out.push_back(db);
  }
  return out;
}

Database base_only(Database db) {
  Database out;
  for (const auto& p : {"p", "r"}) {
    out.declare(p, 1);
    for (const auto& t : db.relation(p)) out.insert(p, t);
  }
  return out;
}

void expect_same_effect(const std::string& text) {
  Update u = parse_update(text);
  Update n = normalize_update(u);
  std::string why;
  EXPECT_TRUE(is_normalized(n, &why)) << why;
  for (const auto& db : small_databases())
    EXPECT_EQ(base_only(test::naive_exec(u, db)), base_only(test::naive_exec(n, db))) << text << "\n" << to_string(db);
}

TEST(Normalize, DisjunctiveQualification) { expect_same_effect("foreach X: p(X) | X = a do insert r(X)"); }

TEST(Normalize, SelfReferenceUsesSnapshot) {
  Update n = normalize_update(parse_update("foreach X: p(X) & !r(X) do insert r(X)"));
  EXPECT_EQ(snapshot_relations(n).size(), 1u);
  expect_same_effect("foreach X: p(X) & !r(X) do insert r(X)");
  expect_same_effect("foreach X: r(X) & !p(X) do delete r(X)");
}

TEST(Normalize, DeleteWithDisjunction) { expect_same_effect("foreach X: p(X) | r(X) & X = b do delete r(X)"); }

TEST(Normalize, ConditionBecomesClauses) {
  Update n = normalize_update(parse_update("if (p(a) | r(b)) & !p(b) then insert r(a)"));
  EXPECT_TRUE(is_normalized(n));
  expect_same_effect("if (p(a) | r(b)) & !p(b) then insert r(a) else delete p(a)");
}

TEST(Normalize, AlreadyNormalUnchanged) {
  Update u = parse_update("foreach X: p(X) do insert r(X)");
  EXPECT_EQ(normalize_update(u), u);
}

TEST(Normalize, RangeRestrictionEnforced) {
  EXPECT_THROW(normalize_update(parse_update("foreach X: !p(X) do insert r(X)")), ValidationError);
}

TEST(Normalize, SnapshotNamesAvoidTaken) {
  Update n = normalize_update(parse_update("foreach X: r(X) do delete r(X)"), {"r_hat", "r_hat2"});
  for (const auto& s : snapshot_relations(n)) {
    EXPECT_NE(s, "r_hat");
    EXPECT_NE(s, "r_hat2");
  }
}

}  // namespace
}  // namespace swp
