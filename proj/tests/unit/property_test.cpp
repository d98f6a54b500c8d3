#include <gtest/gtest.h>

#include "swp/lang/normalize.hpp"
#include "swp/lang/parser.hpp"
#include "swp/oracle/properties.hpp"
#include "swp/wp/rewrite.hpp"
#include "swp/wp/substitute.hpp"
#include "test_support.hpp"

namespace swp {
namespace {

TEST(Properties, SmallCorpusHasNoViolations) {
  PropertyConfig cfg;
  cfg.cases = 40;
  cfg.seed = 1000;
  cfg.confluence_orders = 2;
  PropertyStats s = run_properties(cfg);
  EXPECT_EQ(s.cases, 40u);
  EXPECT_EQ(s.violations(), 0u) << (s.failures.empty() ? "" : s.failures.front());
  EXPECT_EQ(s.instances, 40u * (std::uint64_t{1} << 15));
}

// The runner's verdicts rest on the bit-parallel oracle; spot-check the same
// properties with the naive reference on each case's sample database.
TEST(Properties, NaiveReferenceAgreesOnSampleDatabases) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    GeneratedCase g = generate_case(cfg);
    Update un = normalize_update(g.update);
    Formula wp = wp_full(un, g.constraint);
    bool post = test::naive_holds(g.constraint, test::naive_exec(g.update, g.db));
    EXPECT_EQ(test::naive_holds(wp, g.db), post) << to_string(g.update);
    if (!test::naive_holds(g.constraint, g.db)) continue;
    SwpReport r = rewrite_swp(un, g.constraint);
    EXPECT_EQ(test::naive_holds(r.swp_formula(), g.db), post) << to_string(g.update);
  }
}

TEST(Properties, SwpStrictlyWeakerOnSingletonInsert) {
  PropertyConfig cfg;
  cfg.gen.domain_size = 2;
  cfg.gen.relations = {{"p", 2}, {"q", 2}};
  GeneratedCase g;
  g.update = parse_update(test::read_data("insert_p_aa.upd"));
  g.constraint = parse_constraint(test::read_data("transitive_pq.con"));
  PropertyStats s;
  check_case(g, cfg, s);
  EXPECT_EQ(s.violations(), 0u) << (s.failures.empty() ? "" : s.failures.front());
  EXPECT_GT(s.strict_witnesses, 0u);
}

}  // namespace
}  // namespace swp
