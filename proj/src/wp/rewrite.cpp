#include "swp/wp/rewrite.hpp"

#include <limits>
#include <memory>
#include <stdexcept>

#include "swp/error.hpp"
#include "swp/lang/normalize.hpp"
#include "swp/logic/resolution.hpp"
#include "swp/wp/substitute.hpp"

namespace swp {

Formula ClauseTree::to_formula() const {
  switch (kind) {
    case Kind::kTrue:
      return Formula::truth();
    case Kind::kFalse:
      return Formula::falsity();
    case Kind::kLeaf:
      return close_universally(Formula::from_clause(clause));
    case Kind::kNot:
      return Formula::negation(kids.front().to_formula());
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> parts;
      for (const auto& k : kids) parts.push_back(k.to_formula());
      return kind == Kind::kAnd ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
    }
  }
  return Formula::truth();
}

std::optional<std::vector<Clause>> ClauseTree::conjuncts() const {
  if (kind == Kind::kTrue) return std::vector<Clause>{};
  if (kind == Kind::kLeaf) return std::vector<Clause>{clause};
  if (kind == Kind::kFalse) return std::vector<Clause>{Clause()};
  if (kind != Kind::kAnd) return std::nullopt;
  std::vector<Clause> out;
  for (const auto& k : kids) {
    if (k.kind != Kind::kLeaf) return std::nullopt;
    out.push_back(k.clause);
  }
  return out;
}

std::size_t ClauseTree::literal_count() const {
  std::size_t n = kind == Kind::kLeaf ? clause.size() : 0;
  for (const auto& k : kids) n += k.literal_count();
  return n;
}

std::size_t ClauseTree::leaf_count() const {
  std::size_t n = kind == Kind::kLeaf ? 1 : 0;
  for (const auto& k : kids) n += k.leaf_count();
  return n;
}

namespace {

std::string tree_string(const ClauseTree& t, bool top) {
  switch (t.kind) {
    case ClauseTree::Kind::kTrue:
      return "true";
    case ClauseTree::Kind::kFalse:
      return "false";
    case ClauseTree::Kind::kLeaf: {
      std::string s = to_string(t.clause);
      return (top || t.clause.size() <= 1) ? s : "(" + s + ")";
    }
    case ClauseTree::Kind::kNot:
      return "!(" + tree_string(t.kids.front(), true) + ")";
    case ClauseTree::Kind::kAnd:
    case ClauseTree::Kind::kOr: {
      std::string s;
      const char* sep = t.kind == ClauseTree::Kind::kAnd ? " & " : " | ";
      for (std::size_t i = 0; i < t.kids.size(); ++i) s += (i ? sep : "") + tree_string(t.kids[i], false);
      return top ? s : "(" + s + ")";
    }
  }
  return "";
}

}  // namespace

std::string to_string(const ClauseTree& t) { return tree_string(t, true); }

std::string to_string(DropReason r) { return r == DropReason::kTautology ? "tautology" : "subsumed-by-constraint"; }

namespace {

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
  enum class Kind : std::uint8_t { kTrue, kFalse, kLeaf, kAnd, kOr, kNot, kWp };
  Kind kind = Kind::kTrue;
  Clause clause;
  std::vector<NodePtr> kids;
  const Update* update = nullptr;
  std::shared_ptr<ClauseSet> family;
  int origin = -1;
};

NodePtr make(Node::Kind k, std::vector<NodePtr> kids = {}) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->kids = std::move(kids);
  return n;
}

NodePtr copy(const Node& n) {
  auto c = std::make_unique<Node>();
  c->kind = n.kind;
  c->clause = n.clause;
  c->update = n.update;
  c->family = n.family;
  c->origin = n.origin;
  for (const auto& k : n.kids) c->kids.push_back(copy(*k));
  return c;
}

std::string node_string(const Node& n) {
  switch (n.kind) {
    case Node::Kind::kTrue:
      return "true";
    case Node::Kind::kFalse:
      return "false";
    case Node::Kind::kLeaf:
      return n.clause.size() > 1 ? "(" + to_string(n.clause) + ")" : to_string(n.clause);
    case Node::Kind::kNot:
      return "!" + node_string(*n.kids.front());
    case Node::Kind::kAnd:
    case Node::Kind::kOr: {
      std::string s = "(";
      const char* sep = n.kind == Node::Kind::kAnd ? " & " : " | ";
      for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? sep : "") + node_string(*n.kids[i]);
      return s + ")";
    }
    case Node::Kind::kWp:
      return "wp(" + to_string(*n.update) + ", " + node_string(*n.kids.front()) + ")";
  }
  return "";
}

class Engine {
 public:
  Engine(const RewriteOptions& opts, SwpReport& rep) : opts_(opts), rep_(rep) {
    if (opts.random_seed) rng_.seed(*opts.random_seed);
  }

  NodePtr leaf(Clause c, int origin) {
    if (++rep_.generated > opts_.max_conjuncts)
      throw BlowupError("generated conjunct cap of " + std::to_string(opts_.max_conjuncts) +
                        " exceeded: the precondition grows exponentially in the number of updated-relation "
                        "literals of the constraint");
    auto n = make(Node::Kind::kLeaf);
    n->clause = std::move(c);
    n->origin = origin;
    return n;
  }

  NodePtr wp(const Update* u, NodePtr arg, int origin, std::shared_ptr<ClauseSet> family = nullptr) {
    auto n = make(Node::Kind::kWp);
    n->update = u;
    n->origin = origin;
    n->family = std::move(family);
    n->kids.push_back(std::move(arg));
    return n;
  }

  static bool is_redex(const Node& n) {
    if (n.kind != Node::Kind::kWp) return false;
    if (!n.update->is_atomic()) return true;
    return n.kids.front()->kind != Node::Kind::kWp;
  }

  void innermost(NodePtr& slot) {
    if (slot->kind == Node::Kind::kWp) {
      innermost(slot->kids.front());
      apply(slot);
      innermost(slot);
      return;
    }
    for (auto& k : slot->kids) innermost(k);
  }

  void randomized(NodePtr& root) {
    while (true) {
      std::vector<NodePtr*> redexes;
      collect(root, redexes);
      if (redexes.empty()) return;
      std::uniform_int_distribution<std::size_t> pick(0, redexes.size() - 1);
      apply(*redexes[pick(rng_)]);
    }
  }

 private:
  static void collect(NodePtr& slot, std::vector<NodePtr*>& out) {
    if (is_redex(*slot)) out.push_back(&slot);
    for (auto& k : slot->kids) collect(k, out);
  }

  NodePtr cond_tree(const Update& u, int origin) {
    std::vector<NodePtr> parts;
    for (auto& c : to_clauses(u.cond())) parts.push_back(leaf(simplify_disequalities(c), origin));
    if (parts.empty()) return make(Node::Kind::kTrue);
    if (parts.size() == 1) return std::move(parts.front());
    return make(Node::Kind::kAnd, std::move(parts));
  }

  void apply(NodePtr& slot) {
    Node& n = *slot;
    const Update& u = *n.update;
    int id = static_cast<int>(rep_.steps++);
    std::string redex = opts_.record_trace ? node_string(n) : std::string();
    NodePtr arg = std::move(n.kids.front());
    std::string rule;
    NodePtr result;
    switch (u.kind()) {
      case Update::Kind::kSeq:
        rule = "R5";
        result = wp(&u.first(), wp(&u.second(), std::move(arg), id), id);
        break;
      case Update::Kind::kIf: {
        rule = "R6";
        NodePtr arg2 = copy(*arg);
        std::vector<NodePtr> pos, neg;
        pos.push_back(cond_tree(u, id));
        pos.push_back(wp(&u.first(), std::move(arg), id));
        std::vector<NodePtr> ncond;
        ncond.push_back(cond_tree(u, id));
        neg.push_back(make(Node::Kind::kNot, std::move(ncond)));
        neg.push_back(wp(&u.second(), std::move(arg2), id));
        std::vector<NodePtr> alts;
        alts.push_back(make(Node::Kind::kAnd, std::move(pos)));
        alts.push_back(make(Node::Kind::kAnd, std::move(neg)));
        result = make(Node::Kind::kOr, std::move(alts));
        break;
      }
      case Update::Kind::kSkip:
        rule = "skip";
        result = std::move(arg);
        break;
      case Update::Kind::kInsert:
      case Update::Kind::kDelete:
        result = atomic(u, std::move(arg), n.family, id, rule);
        break;
    }
    if (opts_.record_trace)
      rep_.trace.push_back(TraceStep{id, n.origin, rule, std::move(redex), node_string(*result)});
    slot = std::move(result);
  }

  NodePtr atomic(const Update& u, NodePtr arg, std::shared_ptr<ClauseSet> family, int id, std::string& rule) {
    switch (arg->kind) {
      case Node::Kind::kTrue:
      case Node::Kind::kFalse:
        rule = "const";
        return arg;
      case Node::Kind::kNot:
        rule = "R7";
        arg->kids.front() = wp(&u, std::move(arg->kids.front()), id);
        return arg;
      case Node::Kind::kAnd:
      case Node::Kind::kOr:
        rule = arg->kind == Node::Kind::kAnd ? "R8" : "R9";
        for (auto& k : arg->kids) k = wp(&u, std::move(k), id);
        return arg;
      case Node::Kind::kWp:
        throw std::logic_error("atomic update applied to an unreduced argument");
      case Node::Kind::kLeaf:
        break;
    }
    const Clause& c = arg->clause;
    if (is_tautology(c)) {
      rule = "taut";
      if (early_.insert(c)) rep_.dropped.push_back(DroppedClause{c, DropReason::kTautology, std::nullopt});
      return make(Node::Kind::kTrue);
    }
    if (u.is_snapshot()) {
      rule = "snap";
      Formula renamed = snapshot_substitute(Formula::from_clause(c), u);
      auto cs = to_clauses(renamed);
      return leaf(cs.empty() ? Clause() : cs.front(), id);
    }
    bool ins = u.kind() == Update::Kind::kInsert;
    const std::string& r = u.target();
    std::vector<Term> xs;
    for (const auto& v : u.target_args()) xs.push_back(Term::variable(v));
    std::vector<Literal> upd{Literal{Atom::relation(r, xs), ins}};
    for (const auto& l : conjunction_literals(u.qual())) upd.push_back(l.negated());
    Clause update_clause(upd);
    auto resolvents = binary_resolvents_on(c, update_clause, r);

    Formula bumped = substitute(Formula::from_clause(c), r, ins ? SubstMode::kPosUnion : SubstMode::kNegUnion,
                                u.target_args(), u.qual());
    std::vector<NodePtr> parts;
    ClauseSet seen_here;
    for (auto& cl : to_clauses(bumped)) {
      Clause s = simplify_disequalities(cl);
      if (seen_here.insert(s)) parts.push_back(leaf(std::move(s), id));
    }
    if (resolvents.empty()) {
      rule = ins ? "R1" : "R3";
    } else {
      rule = ins ? "R2" : "R4";
      if (!family) family = std::make_shared<ClauseSet>();
      family->insert(c);
      std::size_t before = c.count(r, !ins);
      for (auto& res : resolvents) {
        if (res.count(r, !ins) >= before)
          throw std::logic_error("resolvent does not reduce the updated-relation literal count: " + to_string(res));
        if (!family->insert(res)) continue;
        parts.push_back(wp(&u, leaf(res, id), id, family));
      }
    }
    if (parts.empty()) return make(Node::Kind::kTrue);
    if (parts.size() == 1) return std::move(parts.front());
    return make(Node::Kind::kAnd, std::move(parts));
  }

  const RewriteOptions& opts_;
  SwpReport& rep_;
  std::mt19937_64 rng_;
  ClauseSet early_;

 public:
  const ClauseSet& early_drops() const { return early_; }
};

ClauseTree freeze(const Node& n) {
  switch (n.kind) {
    case Node::Kind::kTrue:
      return ClauseTree{ClauseTree::Kind::kTrue, {}, {}};
    case Node::Kind::kFalse:
      return ClauseTree{ClauseTree::Kind::kFalse, {}, {}};
    case Node::Kind::kLeaf:
      return ClauseTree::leaf(n.clause);
    case Node::Kind::kNot:
      return ClauseTree{ClauseTree::Kind::kNot, {}, {freeze(*n.kids.front())}};
    case Node::Kind::kAnd:
    case Node::Kind::kOr: {
      auto kind = n.kind == Node::Kind::kAnd ? ClauseTree::Kind::kAnd : ClauseTree::Kind::kOr;
      ClauseTree t{kind, {}, {}};
      ClauseSet leaves;
      for (const auto& k : n.kids) {
        ClauseTree sub = freeze(*k);
        std::vector<ClauseTree> items;
        if (sub.kind == kind)
          items = std::move(sub.kids);
        else
          items.push_back(std::move(sub));
        for (auto& it : items) {
          if (it.kind == ClauseTree::Kind::kLeaf && !leaves.insert(it.clause)) continue;
          t.kids.push_back(std::move(it));
        }
      }
      if (t.kids.size() == 1) return std::move(t.kids.front());
      return t;
    }
    case Node::Kind::kWp:
      throw std::logic_error("unreduced wp node after saturation");
  }
  return {};
}

ClauseTree fold(ClauseTree t) {
  using K = ClauseTree::Kind;
  switch (t.kind) {
    case K::kNot: {
      ClauseTree k = fold(std::move(t.kids.front()));
      if (k.kind == K::kTrue) return ClauseTree{K::kFalse, {}, {}};
      if (k.kind == K::kFalse) return ClauseTree{K::kTrue, {}, {}};
      t.kids.front() = std::move(k);
      return t;
    }
    case K::kAnd:
    case K::kOr: {
      bool conj = t.kind == K::kAnd;
      std::vector<ClauseTree> kids;
      for (auto& c : t.kids) {
        ClauseTree k = fold(std::move(c));
        if ((conj && k.kind == K::kFalse) || (!conj && k.kind == K::kTrue)) return k;
        if ((conj && k.kind == K::kTrue) || (!conj && k.kind == K::kFalse)) continue;
        if (k.kind == t.kind) {
          for (auto& g : k.kids) kids.push_back(std::move(g));
        } else {
          kids.push_back(std::move(k));
        }
      }
      if (kids.empty()) return ClauseTree{conj ? K::kTrue : K::kFalse, {}, {}};
      if (kids.size() == 1) return std::move(kids.front());
      t.kids = std::move(kids);
      return t;
    }
    case K::kLeaf:
      if (t.clause.empty()) return ClauseTree{K::kFalse, {}, {}};
      return t;
    default:
      return t;
  }
}

struct Dropper {
  const std::vector<Clause>& constraint;
  std::vector<DroppedClause>& dropped;
  ClauseSet recorded;

  ClauseTree run(const ClauseTree& t, bool positive) {
    using K = ClauseTree::Kind;
    switch (t.kind) {
      case K::kLeaf: {
        if (is_tautology(t.clause)) {
          record(t.clause, DropReason::kTautology, std::nullopt);
          return ClauseTree{K::kTrue, {}, {}};
        }
        if (positive)
          for (const auto& ci : constraint)
            if (theta_subsumes(ci, t.clause)) {
              record(t.clause, DropReason::kSubsumed, ci);
              return ClauseTree{K::kTrue, {}, {}};
            }
        return t;
      }
      case K::kNot:
        return ClauseTree{K::kNot, {}, {run(t.kids.front(), !positive)}};
      case K::kAnd:
      case K::kOr: {
        ClauseTree out{t.kind, {}, {}};
        for (const auto& k : t.kids) out.kids.push_back(run(k, positive));
        return out;
      }
      default:
        return t;
    }
  }

  void record(const Clause& c, DropReason why, std::optional<Clause> by) {
    if (recorded.insert(c)) dropped.push_back(DroppedClause{c, why, std::move(by)});
  }
};

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sadd(std::uint64_t a, std::uint64_t b) { return a > kSat - b ? kSat : a + b; }
std::uint64_t smul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSat / b ? kSat : a * b;
}
std::uint64_t spow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e && r != kSat; ++i) r = smul(r, a);
  return r;
}

struct Shape {
  std::uint64_t leaves = 1;
  std::uint64_t inner = 0;
  std::uint64_t maxlen = 0;
};

std::uint64_t bound_rec(const Update& u, const Shape& s, Shape& out) {
  switch (u.kind()) {
    case Update::Kind::kSkip:
      out = s;
      return 1;
    case Update::Kind::kSeq: {
      Shape mid;
      std::uint64_t st2 = bound_rec(u.second(), s, mid);
      std::uint64_t st1 = bound_rec(u.first(), mid, out);
      return sadd(1, sadd(st1, st2));
    }
    case Update::Kind::kIf: {
      Shape a, b;
      std::uint64_t st1 = bound_rec(u.first(), s, a);
      std::uint64_t st2 = bound_rec(u.second(), s, b);
      auto cond = to_clauses(u.cond());
      std::uint64_t lc = 0;
      for (const auto& c : cond) lc = std::max<std::uint64_t>(lc, c.size());
      out.leaves = sadd(sadd(a.leaves, b.leaves), 2 * std::max<std::uint64_t>(cond.size(), 1));
      out.inner = sadd(sadd(a.inner, b.inner), 6);
      out.maxlen = std::max({a.maxlen, b.maxlen, lc});
      return sadd(1, sadd(st1, st2));
    }
    case Update::Kind::kInsert:
    case Update::Kind::kDelete: {
      if (u.is_snapshot()) {
        out = s;
        return sadd(s.inner, s.leaves);
      }
      std::uint64_t m = std::max<std::uint64_t>(1, conjunction_literals(u.qual()).size());
      std::uint64_t fam = spow(2, s.maxlen);
      out.leaves = smul(smul(s.leaves, fam), spow(m, s.maxlen));
      out.inner = sadd(s.inner, smul(s.leaves, fam));
      out.maxlen = smul(s.maxlen, m + 1);
      return sadd(s.inner, smul(s.leaves, fam));
    }
  }
  return 0;
}

}  // namespace

std::uint64_t rewrite_bound(const Update& u, const std::vector<Clause>& clauses) {
  Shape s;
  s.leaves = std::max<std::uint64_t>(1, clauses.size());
  s.inner = clauses.size() > 1 ? 1 : 0;
  for (const auto& c : clauses) s.maxlen = std::max<std::uint64_t>(s.maxlen, c.size());
  Shape out;
  return bound_rec(u, s, out);
}

SwpReport rewrite_swp(const Update& u, const Formula& c, const RewriteOptions& opts) {
  std::string why;
  if (!is_normalized(u, &why)) throw ValidationError("update is not normalized: " + why);
  SwpReport rep;
  rep.constraint = to_clauses(c);
  for (auto& ci : rep.constraint) ci = simplify_disequalities(ci);
  rep.bound = rewrite_bound(u, rep.constraint);

  Engine engine(opts, rep);
  std::vector<NodePtr> leaves;
  for (const auto& ci : rep.constraint) leaves.push_back(engine.leaf(ci, -1));
  NodePtr arg;
  if (leaves.empty())
    arg = make(Node::Kind::kTrue);
  else if (leaves.size() == 1)
    arg = std::move(leaves.front());
  else
    arg = make(Node::Kind::kAnd, std::move(leaves));
  NodePtr root = engine.wp(&u, std::move(arg), -1);
  if (opts.random_seed)
    engine.randomized(root);
  else
    engine.innermost(root);
  if (rep.steps > rep.bound)
    throw std::logic_error("rewrite exceeded its structural bound: " + std::to_string(rep.steps) + " > " +
                           std::to_string(rep.bound));

  rep.rewritten = freeze(*root);
  Dropper dropper{rep.constraint, rep.dropped, engine.early_drops()};
  rep.swp = fold(dropper.run(rep.rewritten, true));
  return rep;
}

}  // namespace swp
