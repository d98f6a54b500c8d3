#include "swp/logic/resolution.hpp"

namespace swp {

std::vector<Clause> binary_resolvents_on(const Clause& c1, const Clause& c2, const std::string& r) {
  Clause d2 = rename_apart(c2, c1.variables());
  std::vector<Clause> out;
  const auto& l1s = c1.literals();
  const auto& l2s = d2.literals();
  for (std::size_t i = 0; i < l1s.size(); ++i) {
    const Literal& a = l1s[i];
    if (a.atom.is_equality() || a.atom.predicate() != r) continue;
    for (std::size_t j = 0; j < l2s.size(); ++j) {
      const Literal& b = l2s[j];
      if (b.atom.is_equality() || b.atom.predicate() != r || a.positive == b.positive) continue;
      auto sigma = mgu(a.atom, b.atom);
      if (!sigma) continue;
      std::vector<Literal> lits;
      for (std::size_t k = 0; k < l1s.size(); ++k)
        if (k != i) lits.push_back(sigma->apply(l1s[k]));
      for (std::size_t k = 0; k < l2s.size(); ++k)
        if (k != j) lits.push_back(sigma->apply(l2s[k]));
      out.push_back(simplify_disequalities(Clause(std::move(lits))));
    }
  }
  return out;
}

std::vector<Clause> res_r(const std::vector<Clause>& S, const std::string& r) {
  ClauseSet seen;
  for (const auto& c1 : S)
    for (const auto& c2 : S)
      for (auto& res : binary_resolvents_on(c1, c2, r)) seen.insert(res);
  return seen.clauses();
}

}  // namespace swp
