#include "swp/deductive/hypotheses.hpp"

#include "swp/datalog/analysis.hpp"
#include "swp/lang/normalize.hpp"

namespace swp {

namespace {

void check_schema(const DatalogProgram& p, const Formula& f, const std::string& where, HypothesisReport& rep) {
  for (const auto& [pred, arity] : formula_predicates(f)) {
    const PredInfo* info = p.schema().find(pred);
    if (info && info->arity != arity)
      rep.violations.push_back("H1: " + where + " uses " + pred + "/" + std::to_string(arity) +
                               " but the program declares arity " + std::to_string(info->arity));
  }
}

void walk(const DatalogProgram& p, const Update& u, HypothesisReport& rep) {
  switch (u.kind()) {
    case Update::Kind::kSkip:
      return;
    case Update::Kind::kSeq:
      walk(p, u.first(), rep);
      walk(p, u.second(), rep);
      return;
    case Update::Kind::kIf:
      check_schema(p, u.cond(), "condition", rep);
      walk(p, u.first(), rep);
      walk(p, u.second(), rep);
      return;
    case Update::Kind::kInsert:
    case Update::Kind::kDelete:
      break;
  }
  std::string stmt = to_string(u);
  if (!is_literal_conjunction(u.qual())) {
    rep.violations.push_back("H1: qualification of `" + stmt + "` is not a conjunction of literals");
    return;
  }
  check_schema(p, u.qual(), "qualification of `" + stmt + "`", rep);
  const std::string& r = u.target();
  auto deps = p.schema().contains(r) ? dependents(p, r) : std::set<std::string>{r};
  for (const auto& l : conjunction_literals(u.qual())) {
    if (l.atom.is_equality() || !deps.count(l.atom.predicate())) continue;
    rep.violations.push_back("H2: qualification literal " + to_string(l) + " of `" + stmt + "` depends on " + r);
  }
}

}  // namespace

HypothesisReport check_hypotheses(const DatalogProgram& p, const Update& u, const Formula& c) {
  HypothesisReport rep;
  check_schema(p, c, "constraint", rep);
  walk(p, u, rep);
  return rep;
}

}  // namespace swp
