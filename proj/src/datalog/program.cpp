#include "swp/datalog/program.hpp"

#include "swp/error.hpp"
#include "swp/logic/substitution.hpp"

namespace swp {

void Schema::declare(const std::string& pred, std::size_t arity, PredKind kind) {
  auto [it, inserted] = preds_.try_emplace(pred, PredInfo{arity, kind});
  if (inserted) return;
  if (it->second.arity != arity)
    throw ValidationError("arity mismatch for " + pred + ": " + std::to_string(it->second.arity) + " vs " +
                          std::to_string(arity));
  if (kind == PredKind::kIdb) it->second.kind = PredKind::kIdb;
}

const PredInfo* Schema::find(const std::string& pred) const {
  auto it = preds_.find(pred);
  return it == preds_.end() ? nullptr : &it->second;
}

bool Schema::is_idb(const std::string& pred) const {
  const PredInfo* p = find(pred);
  return p && p->kind == PredKind::kIdb;
}

std::string to_string(const Rule& r) {
  std::string s = to_string(r.head);
  if (!r.body.empty()) {
    s += " :- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) s += (i ? ", " : "") + to_string(r.body[i]);
  }
  return s + ".";
}

std::set<std::string> rule_variables(const Rule& r) {
  std::set<std::string> out;
  collect_variables(r.head, out);
  for (const auto& l : r.body) collect_variables(l.atom, out);
  return out;
}

void check_safety(const Rule& r) {
  std::set<std::string> bound;
  for (const auto& l : r.body)
    if (l.positive && !l.atom.is_equality()) collect_variables(l.atom, bound);
  // A positive equality with one bound side binds the other side.
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& l : r.body) {
      if (!l.positive || !l.atom.is_equality()) continue;
      auto lhs = l.atom.lhs();
      auto rhs = l.atom.rhs();
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        auto bound_term = [&](const Term& t) { return t.is_constant() || bound.count(t.name()); };
        if (bound_term(lhs[i]) && rhs[i].is_variable() && bound.insert(rhs[i].name()).second) grew = true;
        if (bound_term(rhs[i]) && lhs[i].is_variable() && bound.insert(lhs[i].name()).second) grew = true;
      }
    }
  }
  std::set<std::string> needed;
  collect_variables(r.head, needed);
  for (const auto& l : r.body)
    if (!l.positive || l.atom.is_equality()) collect_variables(l.atom, needed);
  for (const auto& v : needed)
    if (!bound.count(v)) throw ValidationError("unsafe rule (variable " + v + "): " + to_string(r));
}

std::optional<Rule> simplify_rule(const Rule& r) {
  Rule cur = r;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.body.size(); ++i) {
      const Literal& l = cur.body[i];
      if (!l.atom.is_equality()) continue;
      auto lhs = l.atom.lhs();
      auto rhs = l.atom.rhs();
      bool all_same = true;
      for (std::size_t k = 0; k < lhs.size(); ++k) {
        if (lhs[k] == rhs[k]) continue;
        all_same = false;
        if (lhs[k].is_constant() && rhs[k].is_constant() && l.positive) return std::nullopt;
      }
      if (all_same) {
        if (!l.positive) return std::nullopt;
        cur.body.erase(cur.body.begin() + i);
        changed = true;
        break;
      }
      if (!l.positive) continue;
      Substitution s;
      for (std::size_t k = 0; k < lhs.size(); ++k) {
        Term a = s.apply(lhs[k]);
        Term b = s.apply(rhs[k]);
        if (a == b) continue;
        if (a.is_variable())
          s.bind(a.name(), b);
        else if (b.is_variable())
          s.bind(b.name(), a);
        else
          return std::nullopt;
      }
      cur.body.erase(cur.body.begin() + i);
      cur.head = s.apply(cur.head);
      for (auto& b : cur.body) b = s.apply(b);
      changed = true;
      break;
    }
  }
  return cur;
}

void DatalogProgram::declare(const std::string& pred, std::size_t arity, PredKind kind) {
  schema_.declare(pred, arity, kind);
}

void DatalogProgram::add_rule(Rule r) {
  if (r.head.is_equality()) throw ValidationError("rule head cannot be an equality");
  check_safety(r);
  schema_.declare(r.head.predicate(), r.head.arity(), PredKind::kIdb);
  for (const auto& l : r.body)
    if (!l.atom.is_equality()) schema_.declare(l.atom.predicate(), l.atom.arity());
  rules_.push_back(std::move(r));
}

std::vector<const Rule*> DatalogProgram::rules_for(const std::string& pred) const {
  std::vector<const Rule*> out;
  for (const auto& r : rules_)
    if (r.head.predicate() == pred) out.push_back(&r);
  return out;
}

std::string to_string(const DatalogProgram& p) {
  std::string s;
  for (const auto& r : p.rules()) s += to_string(r) + "\n";
  return s;
}

}  // namespace swp
