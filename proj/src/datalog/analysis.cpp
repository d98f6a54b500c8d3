#include "swp/datalog/analysis.hpp"

#include <algorithm>
#include <functional>

#include "swp/error.hpp"

namespace swp {

namespace {

void require_declared(const DatalogProgram& p, const std::string& s) {
  if (!p.schema().contains(s)) throw ValidationError("undeclared predicate " + s);
}

struct Edge {
  std::string to;
  bool negative;
};

std::map<std::string, std::vector<Edge>> dependency_graph(const DatalogProgram& p) {
  std::map<std::string, std::vector<Edge>> g;
  for (const auto& [pred, info] : p.schema().entries()) g[pred];
  for (const auto& r : p.rules())
    for (const auto& l : r.body)
      if (!l.atom.is_equality()) g[r.head.predicate()].push_back(Edge{l.atom.predicate(), !l.positive});
  return g;
}

}  // namespace

bool depends(const DatalogProgram& p, const std::string& q, const std::string& r) {
  require_declared(p, q);
  require_declared(p, r);
  return dependents(p, r).count(q) > 0;
}

std::set<std::string> dependents(const DatalogProgram& p, const std::string& r) {
  std::set<std::string> out{r};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& rule : p.rules()) {
      if (out.count(rule.head.predicate())) continue;
      for (const auto& l : rule.body) {
        if (!l.atom.is_equality() && out.count(l.atom.predicate())) {
          out.insert(rule.head.predicate());
          grew = true;
          break;
        }
      }
    }
  }
  return out;
}

Stratification stratify(const DatalogProgram& p) {
  auto g = dependency_graph(p);
  // Tarjan; components come out dependencies first.
  std::map<std::string, int> index, low;
  std::map<std::string, bool> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> comps;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& e : g[v]) {
      if (!index.count(e.to)) {
        visit(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on_stack[e.to]) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(comp);
    }
  };
  for (const auto& [v, edges] : g)
    if (!index.count(v)) visit(v);

  std::map<std::string, int> comp_of;
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const auto& v : comps[i]) comp_of[v] = static_cast<int>(i);

  Stratification s;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    int level = 0;
    for (const auto& v : comps[i]) {
      for (const auto& e : g[v]) {
        if (comp_of[e.to] == static_cast<int>(i)) {
          if (e.negative)
            throw UnsupportedError("program is not stratifiable: " + v + " depends negatively on " + e.to +
                                   " within a recursive cycle {" +
                                   [&] {
                                     std::string c;
                                     for (const auto& x : comps[i]) c += (c.empty() ? "" : ", ") + x;
                                     return c;
                                   }() +
                                   "}");
          continue;
        }
        level = std::max(level, s.stratum[e.to] + (e.negative ? 1 : 0));
      }
    }
    for (const auto& v : comps[i]) s.stratum[v] = level;
  }
  int top = 0;
  for (const auto& [v, l] : s.stratum) top = std::max(top, l);
  s.layers.assign(static_cast<std::size_t>(top) + 1, {});
  for (const auto& [v, l] : s.stratum) s.layers[static_cast<std::size_t>(l)].push_back(v);
  return s;
}

bool is_linear(const DatalogProgram& p) {
  for (const auto& r : p.rules()) {
    int idb = 0;
    for (const auto& l : r.body)
      if (!l.atom.is_equality() && p.is_idb(l.atom.predicate())) ++idb;
    if (idb > 1) return false;
  }
  return true;
}

}  // namespace swp
