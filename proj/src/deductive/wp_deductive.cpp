#include "swp/deductive/wp_deductive.hpp"

#include "swp/datalog/analysis.hpp"
#include "swp/deductive/hypotheses.hpp"
#include "swp/deductive/prime.hpp"
#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"

namespace swp {

namespace {

class Builder {
 public:
  explicit Builder(DatalogProgram p) : prog_(std::move(p)) {
    for (const auto& [pred, info] : prog_.schema().entries()) taken_.insert(pred);
  }

  Formula wp(const Update& u, const Formula& c) {
    switch (u.kind()) {
      case Update::Kind::kSkip:
        return c;
      case Update::Kind::kSeq:
        return wp(u.first(), wp(u.second(), c));
      case Update::Kind::kIf: {
        Formula then_wp = wp(u.first(), c);
        Formula else_wp = wp(u.second(), c);
        Formula cond = close_universally(u.cond());
        return Formula::disjunction({Formula::conjunction({cond, then_wp}),
                                     Formula::conjunction({Formula::negation(cond), else_wp})});
      }
      case Update::Kind::kInsert:
      case Update::Kind::kDelete:
        return atomic(u, c);
    }
    return c;
  }

  DatalogProgram take() { return std::move(prog_); }

 private:
  Formula atomic(const Update& u, const Formula& c) {
    const std::string& r = u.target();
    bool ins = u.kind() == Update::Kind::kInsert;
    if (!ins && prog_.is_idb(r)) throw UnsupportedError("delete from derived relation " + r + " is not supported");
    prog_.declare(r, u.vars().size());
    PrimedProgram pp = prime_program(prog_, r, taken_);
    prog_ = std::move(pp.program);
    for (const auto& [q, name] : pp.primed_of) taken_.insert(name);
    const std::string& rp = pp.primed_of.at(r);

    std::vector<Term> xs;
    for (const auto& v : u.target_args()) xs.push_back(Term::variable(v));
    std::vector<Literal> phi = conjunction_literals(u.qual());
    if (ins) {
      prog_.add_rule(Rule{Atom::relation(rp, xs), {Literal{Atom::relation(r, xs), true}}});
      add_simplified(Rule{Atom::relation(rp, xs), phi});
    } else {
      std::string t;
      do t = "t_del_" + std::to_string(++deletes_);
      while (taken_.count(t));
      taken_.insert(t);
      prog_.declare(t, xs.size(), PredKind::kIdb);
      prog_.add_rule(Rule{Atom::relation(rp, xs),
                          {Literal{Atom::relation(r, xs), true}, Literal{Atom::relation(t, xs), false}}});
      add_simplified(Rule{Atom::relation(t, xs), phi});
      stratify(prog_);
    }
    return rename_predicates(c, pp.primed_of);
  }

  void add_simplified(const Rule& r) {
    if (auto s = simplify_rule(r)) prog_.add_rule(*s);
  }

  DatalogProgram prog_;
  std::set<std::string> taken_;
  int deletes_ = 0;
};

}  // namespace

DeductiveWp wp_deductive(const Update& u, const Formula& c, const DatalogProgram& p) {
  HypothesisReport h = check_hypotheses(p, u, c);
  if (!h.ok()) {
    std::string msg = "hypothesis check failed:";
    for (const auto& v : h.violations) msg += "\n  " + v;
    throw UnsupportedError(msg);
  }
  Builder b(p);
  Formula f = b.wp(u, c);
  return DeductiveWp{f, b.take()};
}

}  // namespace swp
