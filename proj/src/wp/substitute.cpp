#include "swp/wp/substitute.hpp"

#include "swp/error.hpp"

namespace swp {

namespace {

Formula instantiate(const std::vector<std::string>& params, const Formula& phi, const std::vector<Term>& args) {
  Substitution s;
  for (std::size_t i = 0; i < params.size(); ++i) s.assign(params[i], args[i]);
  return substitute_terms(phi, s);
}

Formula subst_rec(const Formula& f, bool positive, const std::string& r, SubstMode mode,
                  const std::vector<std::string>& params, const Formula& phi) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
    case Formula::Kind::kFalse:
      return f;
    case Formula::Kind::kAtom: {
      const Atom& a = f.atom_value();
      if (a.is_equality() || a.predicate() != r) return f;
      if (a.arity() != params.size())
        throw ValidationError("arity mismatch substituting " + r + ": " + std::to_string(a.arity()) + " vs " +
                              std::to_string(params.size()));
      Formula inst = instantiate(params, phi, a.args());
      switch (mode) {
        case SubstMode::kAllUnion:
          return Formula::disjunction({f, inst});
        case SubstMode::kAllDiff:
          return Formula::conjunction({f, Formula::negation(inst)});
        case SubstMode::kPosUnion:
          return positive ? Formula::disjunction({f, inst}) : f;
        case SubstMode::kNegUnion:
          return positive ? f : Formula::conjunction({f, Formula::negation(inst)});
      }
      return f;
    }
    case Formula::Kind::kNot:
      return Formula::negation(subst_rec(f.child(), !positive, r, mode, params, phi));
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      std::vector<Formula> kids;
      for (const auto& k : f.children()) kids.push_back(subst_rec(k, positive, r, mode, params, phi));
      return f.kind() == Formula::Kind::kAnd ? Formula::conjunction(std::move(kids))
                                             : Formula::disjunction(std::move(kids));
    }
    case Formula::Kind::kForall:
      return Formula::forall(f.bound(), subst_rec(f.child(), positive, r, mode, params, phi));
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& c, const std::string& r, SubstMode mode, const std::vector<std::string>& params,
                   const Formula& phi) {
  return subst_rec(c, true, r, mode, params, phi);
}

Formula snapshot_substitute(const Formula& c, const Update& snapshot) {
  const Formula& q = snapshot.qual();
  return rename_predicates(c, {{snapshot.target(), q.atom_value().predicate()}});
}

Formula wp_full(const Update& u, const Formula& c) {
  switch (u.kind()) {
    case Update::Kind::kSkip:
      return c;
    case Update::Kind::kInsert:
      if (u.is_snapshot()) return snapshot_substitute(c, u);
      return substitute(c, u.target(), SubstMode::kAllUnion, u.target_args(), u.qual());
    case Update::Kind::kDelete:
      return substitute(c, u.target(), SubstMode::kAllDiff, u.target_args(), u.qual());
    case Update::Kind::kSeq:
      return wp_full(u.first(), wp_full(u.second(), c));
    case Update::Kind::kIf: {
      Formula cond = close_universally(u.cond());
      return Formula::disjunction({Formula::conjunction({cond, wp_full(u.first(), c)}),
                                   Formula::conjunction({Formula::negation(cond), wp_full(u.second(), c)})});
    }
  }
  return c;
}

}  // namespace swp
