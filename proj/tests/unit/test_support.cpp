#include "test_support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace swp::test {

namespace {

using Env = std::map<std::string, std::string>;

std::string value(const Term& t, const Env& env) {
  if (t.is_constant()) return t.name();
  auto it = env.find(t.name());
  if (it == env.end()) throw std::logic_error("unbound variable " + t.name());
  return it->second;
}

bool atom_true(const Atom& a, const Database& db, const Env& env) {
  if (a.is_equality()) {
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (value(a.lhs()[i], env) != value(a.rhs()[i], env)) return false;
    return true;
  }
  Tuple t;
  for (const auto& x : a.args()) t.push_back(value(x, env));
  return db.arity(a.predicate()) && db.contains(a.predicate(), t);
}

// Calls f for every extension of env over vars.
void assignments(const std::vector<std::string>& vars, const std::vector<std::string>& dom, Env env,
                 const std::function<bool(const Env&)>& f) {
  std::vector<std::size_t> idx(vars.size(), 0);
  if (!vars.empty() && dom.empty()) return;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = dom[idx[i]];
    if (!f(env)) return;
    std::size_t k = 0;
    while (k < vars.size() && ++idx[k] == dom.size()) idx[k++] = 0;
    if (k == vars.size()) return;
  }
}

bool holds(const Formula& f, const Database& db, const std::vector<std::string>& dom, const Env& env) {
  switch (f.kind()) {
    case Formula::Kind::kTrue:
      return true;
    case Formula::Kind::kFalse:
      return false;
    case Formula::Kind::kAtom:
      return atom_true(f.atom_value(), db, env);
    case Formula::Kind::kNot:
      return !holds(f.child(), db, dom, env);
    case Formula::Kind::kAnd:
      for (const auto& g : f.children())
        if (!holds(g, db, dom, env)) return false;
      return true;
    case Formula::Kind::kOr:
      for (const auto& g : f.children())
        if (holds(g, db, dom, env)) return true;
      return false;
    case Formula::Kind::kForall: {
      bool all = true;
      assignments(f.bound(), dom, env, [&](const Env& e) { return all = holds(f.child(), db, dom, e); });
      return all;
    }
  }
  return false;
}

std::vector<std::string> domain_of(const Database& db, const std::set<std::string>& more) {
  std::set<std::string> d = db.active_domain();
  d.insert(more.begin(), more.end());
  return {d.begin(), d.end()};
}

}  // namespace

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(SWP_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_clauses(const std::vector<Clause>& a, const std::vector<Clause>& b) {
  ClauseSet sa, sb;
  for (const auto& c : a) sa.insert(c);
  for (const auto& c : b) sb.insert(c);
  if (sa.size() != sb.size()) return false;
  for (const auto& c : sa.clauses())
    if (!sb.contains(c)) return false;
  return true;
}

bool naive_holds(const Formula& f, const Database& db, const std::set<std::string>& extra) {
  std::set<std::string> more = formula_constants(f);
  more.insert(extra.begin(), extra.end());
  Formula g = close_universally(f);
  return holds(g, db, domain_of(db, more), {});
}

Database naive_exec(const Update& u, const Database& db) {
  switch (u.kind()) {
    case Update::Kind::kSkip:
      return db;
    case Update::Kind::kSeq:
      return naive_exec(u.second(), naive_exec(u.first(), db));
    case Update::Kind::kIf:
      if (naive_holds(u.cond(), db)) return naive_exec(u.first(), db);
      return u.has_else() ? naive_exec(u.second(), db) : db;
    case Update::Kind::kInsert:
    case Update::Kind::kDelete: {
      std::vector<std::string> dom = domain_of(db, formula_constants(u.qual()));
      std::vector<Tuple> hits;
      assignments(u.vars(), dom, {}, [&](const Env& e) {
        if (holds(u.qual(), db, dom, e)) {
          Tuple t;
          for (const auto& v : u.target_args()) t.push_back(e.at(v));
          hits.push_back(t);
        }
        return true;
      });
      Database out = db;
      out.declare(u.target(), u.target_args().size());
      for (const auto& t : hits) {
        if (u.kind() == Update::Kind::kInsert)
          out.insert(u.target(), t);
        else
          out.erase(u.target(), t);
      }
      return out;
    }
  }
  return db;
}

Database naive_model(const DatalogProgram& p, const Database& db) {
  std::map<std::string, int> rank;
  for (const auto& [pred, info] : p.schema().entries()) rank[pred] = 0;
  const int limit = static_cast<int>(rank.size()) + 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : p.rules()) {
      int& h = rank[r.head.predicate()];
      for (const auto& l : r.body) {
        if (l.atom.is_equality()) continue;
        int need = rank[l.atom.predicate()] + (l.positive ? 0 : 1);
        if (need > h) {
          h = need;
          changed = true;
        }
      }
      if (h > limit) throw std::runtime_error("program does not stratify");
    }
  }
  std::set<std::string> consts;
  for (const auto& r : p.rules()) {
    collect_constants(r.head, consts);
    for (const auto& l : r.body) collect_constants(l.atom, consts);
  }
  Database model = db;
  for (const auto& [pred, info] : p.schema().entries()) model.declare(pred, info.arity);
  std::vector<std::string> dom = domain_of(db, consts);
  int top = 0;
  for (const auto& [pred, k] : rank) top = std::max(top, k);
  for (int k = 0; k <= top; ++k) {
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& r : p.rules()) {
        if (rank[r.head.predicate()] != k) continue;
        std::set<std::string> vs = rule_variables(r);
        std::vector<std::string> vars(vs.begin(), vs.end());
        std::vector<Tuple> derived;
        assignments(vars, dom, {}, [&](const Env& e) {
          for (const auto& l : r.body)
            if (atom_true(l.atom, model, e) != l.positive) return true;
          Tuple t;
          for (const auto& x : r.head.args()) t.push_back(value(x, e));
          derived.push_back(t);
          return true;
        });
        for (const auto& t : derived) grew |= model.insert(r.head.predicate(), t);
      }
    }
  }
  return model;
}

Database naive_exec_deductive(const Update& u, const DatalogProgram& p, const Database& db) {
  switch (u.kind()) {
    case Update::Kind::kSkip:
      return db;
    case Update::Kind::kSeq:
      return naive_exec_deductive(u.second(), p, naive_exec_deductive(u.first(), p, db));
    case Update::Kind::kIf:
      if (naive_holds(u.cond(), naive_model(p, db))) return naive_exec_deductive(u.first(), p, db);
      return u.has_else() ? naive_exec_deductive(u.second(), p, db) : db;
    default:
      break;
  }
  Database post = naive_exec(u, naive_model(p, db));
  Database out;
  for (const auto& pred : post.predicates()) {
    if (p.is_idb(pred)) continue;
    out.declare(pred, *post.arity(pred));
    for (const auto& t : post.relation(pred)) out.insert(pred, t);
  }
  return out;
}

std::vector<std::string> node_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("n" + std::to_string(i));
  return out;
}

Database random_dag(std::mt19937_64& rng, const std::vector<std::string>& nodes, double density,
                    const std::string& rel) {
  std::vector<std::string> order = nodes;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(density);
  Database db;
  db.declare(rel, 2);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (coin(rng)) db.insert(rel, {order[i], order[j]});
  return db;
}

Database random_graph(std::mt19937_64& rng, const std::vector<std::string>& nodes, double density,
                      const std::string& rel) {
  std::bernoulli_distribution coin(density);
  Database db;
  db.declare(rel, 2);
  for (const auto& a : nodes)
    for (const auto& b : nodes)
      if (coin(rng)) db.insert(rel, {a, b});
  return db;
}

Database merge(const Database& a, const Database& b) {
  Database out = a;
  for (const auto& p : b.predicates()) {
    out.declare(p, *b.arity(p));
    for (const auto& t : b.relation(p)) out.insert(p, t);
  }
  return out;
}

}  // namespace swp::test
