#include "swp/oracle/equiv.hpp"

#include <bit>

#include "swp/error.hpp"
#include "swp/oracle/structure.hpp"

namespace swp {

namespace {

EquivResult compare(const Formula& f, const Formula& g, std::size_t extra, std::uint64_t cap, bool implies) {
  EquivResult res;
  if (f == g) {
    res.fast_path = true;
    return res;
  }
  std::set<std::string> consts = formula_constants(f);
  for (const auto& c : formula_constants(g)) consts.insert(c);
  std::vector<std::string> dom(consts.begin(), consts.end());
  for (std::size_t i = 1; dom.size() < consts.size() + extra; ++i) {
    std::string name = "e" + std::to_string(i);
    if (!consts.count(name)) dom.push_back(name);
  }
  std::map<std::string, std::size_t> rels = formula_predicates(f);
  for (const auto& [p, a] : formula_predicates(g)) {
    auto [it, fresh] = rels.emplace(p, a);
    if (!fresh && it->second != a) throw ValidationError("arity mismatch on " + p);
  }
  Signature sig(dom, rels);
  std::vector<std::size_t> free(sig.tuple_count());
  for (std::size_t i = 0; i < free.size(); ++i) free[i] = i;
  InstanceBatches batches(sig, free, cap);
  CompiledFormula cf(f, sig), cg(g, sig);
  std::uint64_t valid = batches.valid_mask();
  for (std::uint64_t q = 0; q < batches.batch_count(); ++q) {
    Lanes w = batches.batch(q);
    std::uint64_t a = cf.eval(w), b = cg.eval(w);
    std::uint64_t bad = (implies ? (a & ~b) : (a ^ b)) & valid;
    res.instances += static_cast<std::uint64_t>(std::popcount(valid));
    if (bad) {
      int lane = std::countr_zero(bad);
      res.holds = false;
      res.counterexample = lane_database(sig, w, lane);
      return res;
    }
  }
  return res;
}

}  // namespace

EquivResult equiv_bruteforce(const Formula& f, const Formula& g, std::size_t extra_constants, std::uint64_t cap) {
  return compare(f, g, extra_constants, cap, false);
}

EquivResult implies_bruteforce(const Formula& f, const Formula& g, std::size_t extra_constants, std::uint64_t cap) {
  return compare(f, g, extra_constants, cap, true);
}

}  // namespace swp
