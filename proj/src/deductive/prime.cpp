#include "swp/deductive/prime.hpp"

#include <regex>

#include "swp/datalog/analysis.hpp"
#include "swp/error.hpp"

namespace swp {

std::string primed_name(const std::string& q, const std::set<std::string>& taken) {
  static const std::regex primed("(.*)_prime([0-9]*)");
  std::smatch m;
  std::string stem = q;
  int gen = 1;
  if (std::regex_match(q, m, primed)) {
    stem = m[1].str();
    gen = (m[2].length() ? std::stoi(m[2].str()) : 1) + 1;
  }
  while (true) {
    std::string name = stem + "_prime" + (gen == 1 ? "" : std::to_string(gen));
    if (!taken.count(name)) return name;
    ++gen;
  }
}

PrimedProgram prime_program(const DatalogProgram& p, const std::string& r, const std::set<std::string>& taken) {
  if (!p.schema().contains(r)) throw ValidationError("cannot prime undeclared predicate " + r);
  PrimedProgram out;
  out.program = p;
  std::set<std::string> used = taken;
  for (const auto& [pred, info] : p.schema().entries()) used.insert(pred);
  for (const auto& q : dependents(p, r)) {
    std::string name = primed_name(q, used);
    used.insert(name);
    out.primed_of[q] = name;
  }
  auto prime = [&](const Atom& a) {
    auto it = out.primed_of.find(a.predicate());
    if (a.is_equality() || it == out.primed_of.end()) return a;
    return Atom::relation(it->second, a.args());
  };
  for (const auto& rule : p.rules()) {
    if (!out.primed_of.count(rule.head.predicate())) continue;
    Rule copy{prime(rule.head), {}};
    for (const auto& l : rule.body) copy.body.push_back(Literal{prime(l.atom), l.positive});
    out.program.add_rule(copy);
  }
  const PredInfo* info = p.schema().find(r);
  out.program.declare(out.primed_of.at(r), info->arity, PredKind::kIdb);
  return out;
}

}  // namespace swp
