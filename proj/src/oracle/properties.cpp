#include "swp/oracle/properties.hpp"

#include <bit>

#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"
#include "swp/oracle/exec.hpp"
#include "swp/oracle/structure.hpp"
#include "swp/wp/confluence.hpp"
#include "swp/wp/rewrite.hpp"
#include "swp/wp/substitute.hpp"

namespace swp {

namespace {

std::string describe(const GeneratedCase& g, const std::string& what, const Database* db) {
  std::string s = what + "\n  constraint: " + to_string(close_universally(g.constraint)) +
                  "\n  update: " + to_string(g.update);
  if (db) s += "\n  instance:\n" + to_string(*db);
  return s;
}

}  // namespace

void check_case(const GeneratedCase& g, const PropertyConfig& cfg, PropertyStats& stats) {
  ++stats.cases;
  Update un = normalize_update(g.update);
  Formula wp = wp_full(un, g.constraint);

  std::optional<SwpReport> rep;
  RewriteOptions ro;
  ro.max_conjuncts = cfg.max_conjuncts;
  ro.record_trace = false;
  try {
    rep = rewrite_swp(un, g.constraint, ro);
  } catch (const BlowupError&) {
    ++stats.cap_hits;
  }

  std::map<std::string, std::size_t> rels = cfg.gen.relations;
  for (const auto& [p, a] : update_predicates(un)) rels.emplace(p, a);
  Signature sig(domain_constants(cfg.gen.domain_size), rels);
  std::vector<std::size_t> free, base;
  for (const auto& [p, a] : cfg.gen.relations)
    for (auto t : sig.tuples_of(p)) free.push_back(t);
  base = free;
  InstanceBatches batches(sig, free);

  CompiledFormula c(g.constraint, sig), w(wp, sig);
  std::optional<CompiledFormula> s;
  if (rep) s.emplace(rep->swp_formula(), sig);
  CompiledUpdate raw(g.update, sig), norm(un, sig);
  std::uint64_t valid = batches.valid_mask();

  bool wp_bad = false, swp_bad = false, weak_bad = false, norm_bad = false;
  for (std::uint64_t q = 0; q < batches.batch_count(); ++q) {
    Lanes pre = batches.batch(q);
    Lanes post = pre, post_n = pre;
    raw.apply(post);
    norm.apply(post_n);
    stats.instances += static_cast<std::uint64_t>(std::popcount(valid));
    std::uint64_t diff = 0;
    for (auto t : base) diff |= post[t] ^ post_n[t];
    diff &= valid;
    std::uint64_t cpost = c.eval(post);
    std::uint64_t cpre = c.eval(pre);
    std::uint64_t wv = w.eval(pre);
    auto fail = [&](bool& flag, std::size_t& counter, std::uint64_t bad, const std::string& what) {
      if (!bad || flag) return;
      flag = true;
      ++counter;
      Database db = lane_database(sig, pre, std::countr_zero(bad));
      stats.failures.push_back(describe(g, what, &db));
    };
    fail(norm_bad, stats.normalize_violations, diff, "normalized update differs");
    fail(wp_bad, stats.wp_violations, (wv ^ cpost) & valid, "wp property violated");
    if (s) {
      std::uint64_t sv = s->eval(pre);
      fail(swp_bad, stats.swp_violations, cpre & (sv ^ cpost) & valid, "swp property violated");
      fail(weak_bad, stats.weaker_violations, wv & ~sv & valid, "wp does not imply swp");
      stats.strict_witnesses += static_cast<std::uint64_t>(std::popcount(sv & ~wv & valid));
    }
  }

  if (rep) {
    stats.max_steps = std::max(stats.max_steps, rep->steps);
    if (rep->steps > rep->bound) {
      ++stats.bound_violations;
      stats.failures.push_back(describe(g, "rewrite exceeded its bound", nullptr));
    }
    for (const auto& d : rep->dropped) {
      bool ok = false;
      if (d.reason == DropReason::kTautology) {
        ok = is_tautology(d.clause);
      } else if (d.subsumer) {
        for (const auto& ci : rep->constraint) ok |= ci == *d.subsumer;
        ok = ok && theta_subsumes(*d.subsumer, d.clause);
      }
      if (!ok) {
        ++stats.drop_violations;
        stats.failures.push_back(describe(g, "unjustified drop of " + to_string(d.clause), nullptr));
      }
    }
    if (cfg.confluence_orders > 0) {
      auto v = check_confluence_sample(un, g.constraint, cfg.confluence_orders, cfg.seed, cfg.extra_constants);
      if (!v.confluent) {
        ++stats.confluence_violations;
        stats.failures.push_back(describe(g, "rewrite orders disagree: " + v.detail, nullptr));
      }
    }
  }
}

PropertyStats run_properties(const PropertyConfig& cfg) {
  PropertyStats stats;
  for (std::size_t i = 0; i < cfg.cases; ++i) {
    GenConfig gc = cfg.gen;
    gc.seed = cfg.seed + i;
    PropertyConfig one = cfg;
    one.gen = gc;
    check_case(generate_case(gc), one, stats);
  }
  return stats;
}

}  // namespace swp
