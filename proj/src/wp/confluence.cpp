#include "swp/wp/confluence.hpp"

#include <algorithm>

#include "swp/oracle/equiv.hpp"

namespace swp {

std::string canonical_string(const ClauseTree& t) {
  switch (t.kind) {
    case ClauseTree::Kind::kTrue:
      return "true";
    case ClauseTree::Kind::kFalse:
      return "false";
    case ClauseTree::Kind::kLeaf:
      return "[" + to_string(canonical_form(t.clause)) + "]";
    case ClauseTree::Kind::kNot:
      return "!(" + canonical_string(t.kids.front()) + ")";
    case ClauseTree::Kind::kAnd:
    case ClauseTree::Kind::kOr: {
      std::vector<std::string> parts;
      for (const auto& k : t.kids) parts.push_back(canonical_string(k));
      std::sort(parts.begin(), parts.end());
      parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
      std::string s = t.kind == ClauseTree::Kind::kAnd ? "and(" : "or(";
      for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
      return s + ")";
    }
  }
  return "";
}

ConfluenceVerdict check_confluence_sample(const Update& u, const Formula& c, std::size_t n_orders,
                                          std::uint64_t seed, std::size_t extra_constants) {
  ConfluenceVerdict v;
  RewriteOptions base;
  base.record_trace = false;
  SwpReport ref = rewrite_swp(u, c, base);
  std::string ref_key = canonical_string(ref.swp);
  for (std::size_t i = 0; i < n_orders; ++i) {
    RewriteOptions opts = base;
    opts.random_seed = seed + i;
    SwpReport got = rewrite_swp(u, c, opts);
    ++v.orders;
    if (canonical_string(got.swp) == ref_key) continue;
    ++v.enumerated;
    EquivResult e = equiv_bruteforce(ref.swp_formula(), got.swp_formula(), extra_constants);
    if (!e.holds) {
      v.confluent = false;
      v.detail = "order " + std::to_string(seed + i) + ": " + to_string(ref.swp) + " vs " + to_string(got.swp) +
                 "\ncounterexample:\n" + to_string(*e.counterexample);
      return v;
    }
  }
  return v;
}

}  // namespace swp
