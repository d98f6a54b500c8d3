#include "swp/datalog/evaluate.hpp"

#include <map>
#include <set>

#include "swp/datalog/analysis.hpp"

namespace swp {

namespace {

using Bindings = std::map<std::string, std::string>;
using Facts = std::map<std::string, std::set<Tuple>>;

bool value_of(const Term& t, const Bindings& b, std::string& out) {
  if (t.is_constant()) {
    out = t.name();
    return true;
  }
  auto it = b.find(t.name());
  if (it == b.end()) return false;
  out = it->second;
  return true;
}

class RuleJoin {
 public:
  RuleJoin(const Rule& r, const Database& full, const Facts* delta, int delta_pos, Facts& out)
      : rule_(r), full_(full), delta_(delta), delta_pos_(delta_pos), out_(out) {
    for (std::size_t i = 0; i < r.body.size(); ++i)
      if (r.body[i].positive && !r.body[i].atom.is_equality() && static_cast<int>(i) != delta_pos)
        positives_.push_back(i);
  }

  void run() {
    Bindings b;
    if (delta_pos_ >= 0) {
      const Literal& l = rule_.body[static_cast<std::size_t>(delta_pos_)];
      auto it = delta_->find(l.atom.predicate());
      if (it == delta_->end()) return;
      for (const auto& t : it->second) {
        Bindings b2 = b;
        if (unify(l.atom, t, b2)) step(0, b2);
      }
      return;
    }
    step(0, b);
  }

 private:
  static bool unify(const Atom& a, const Tuple& t, Bindings& b) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Term& x = a.args()[i];
      if (x.is_constant()) {
        if (x.name() != t[i]) return false;
        continue;
      }
      auto [it, inserted] = b.try_emplace(x.name(), t[i]);
      if (!inserted && it->second != t[i]) return false;
    }
    return true;
  }

  void step(std::size_t k, Bindings& b) {
    if (k == positives_.size()) {
      finish(b);
      return;
    }
    const Atom& a = rule_.body[positives_[k]].atom;
    for (const auto& t : full_.relation(a.predicate())) {
      Bindings b2 = b;
      if (unify(a, t, b2)) step(k + 1, b2);
    }
  }

  void finish(Bindings b) {
    // Equalities may bind the remaining variables.
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& l : rule_.body) {
        if (!l.positive || !l.atom.is_equality()) continue;
        auto lhs = l.atom.lhs();
        auto rhs = l.atom.rhs();
        for (std::size_t i = 0; i < lhs.size(); ++i) {
          std::string x, y;
          bool hx = value_of(lhs[i], b, x), hy = value_of(rhs[i], b, y);
          if (hx && !hy) {
            b[rhs[i].name()] = x;
            grew = true;
          } else if (hy && !hx) {
            b[lhs[i].name()] = y;
            grew = true;
          }
        }
      }
    }
    for (const auto& l : rule_.body) {
      if (l.atom.is_equality()) {
        bool equal = true;
        auto lhs = l.atom.lhs();
        auto rhs = l.atom.rhs();
        for (std::size_t i = 0; i < lhs.size(); ++i) {
          std::string x, y;
          if (!value_of(lhs[i], b, x) || !value_of(rhs[i], b, y)) return;
          if (x != y) equal = false;
        }
        if (equal != l.positive) return;
      } else if (!l.positive) {
        Tuple t;
        for (const auto& x : l.atom.args()) {
          std::string v;
          if (!value_of(x, b, v)) return;
          t.push_back(v);
        }
        if (full_.contains(l.atom.predicate(), t)) return;
      }
    }
    Tuple head;
    for (const auto& x : rule_.head.args()) {
      std::string v;
      if (!value_of(x, b, v)) return;
      head.push_back(v);
    }
    if (!full_.contains(rule_.head.predicate(), head)) out_[rule_.head.predicate()].insert(head);
  }

  const Rule& rule_;
  const Database& full_;
  const Facts* delta_;
  int delta_pos_;
  Facts& out_;
  std::vector<std::size_t> positives_;
};

bool merge(Database& m, const Facts& fresh) {
  bool any = false;
  for (const auto& [p, ts] : fresh)
    for (const auto& t : ts) any |= m.insert(p, t);
  return any;
}

}  // namespace

Interpretation evaluate(const DatalogProgram& p, const Database& b, EvalLog* log) {
  Database m = b;
  for (const auto& [pred, info] : p.schema().entries()) m.declare(pred, info.arity);
  if (p.empty()) return m;
  Stratification strat = stratify(p);
  for (const auto& layer : strat.layers) {
    std::set<std::string> here(layer.begin(), layer.end());
    std::vector<const Rule*> rules;
    for (const auto& r : p.rules())
      if (here.count(r.head.predicate())) rules.push_back(&r);
    if (!rules.empty()) {
      Facts delta;
      for (const Rule* r : rules) RuleJoin(*r, m, nullptr, -1, delta).run();
      merge(m, delta);
      if (log) ++log->rounds;
      while (!delta.empty()) {
        Facts next;
        for (const Rule* r : rules)
          for (std::size_t i = 0; i < r->body.size(); ++i) {
            const Literal& l = r->body[i];
            if (l.positive && !l.atom.is_equality() && here.count(l.atom.predicate()))
              RuleJoin(*r, m, &delta, static_cast<int>(i), next).run();
          }
        merge(m, next);
        delta = std::move(next);
        if (log) ++log->rounds;
      }
    }
    if (log) log->completed.push_back(layer);
  }
  return m;
}

}  // namespace swp
