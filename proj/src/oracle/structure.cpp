#include "swp/oracle/structure.hpp"

#include <algorithm>

#include "swp/error.hpp"

namespace swp {

namespace {

std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

Signature::Signature(std::vector<std::string> domain, std::map<std::string, std::size_t> relations)
    : domain_(std::move(domain)), arity_(std::move(relations)) {
  for (std::size_t i = 0; i < domain_.size(); ++i) position_[domain_[i]] = static_cast<int>(i);
  for (const auto& [rel, a] : arity_) {
    base_[rel] = tuples_;
    tuples_ += power(domain_.size(), a);
  }
}

std::size_t Signature::arity(const std::string& rel) const {
  auto it = arity_.find(rel);
  if (it == arity_.end()) throw ValidationError("relation " + rel + " is not in the signature");
  return it->second;
}

std::size_t Signature::base(const std::string& rel) const {
  auto it = base_.find(rel);
  if (it == base_.end()) throw ValidationError("relation " + rel + " is not in the signature");
  return it->second;
}

int Signature::element(const std::string& constant) const {
  auto it = position_.find(constant);
  return it == position_.end() ? -1 : it->second;
}

std::size_t Signature::index(const std::string& rel, std::span<const int> args) const {
  std::size_t i = 0;
  for (int a : args) i = i * domain_.size() + static_cast<std::size_t>(a);
  return base(rel) + i;
}

std::pair<std::string, std::vector<int>> Signature::tuple(std::size_t index) const {
  for (const auto& [rel, b] : base_) {
    std::size_t a = arity_.at(rel);
    std::size_t n = power(domain_.size(), a);
    if (index < b || index >= b + n) continue;
    std::size_t off = index - b;
    std::vector<int> args(a);
    for (std::size_t k = a; k-- > 0;) {
      args[k] = static_cast<int>(off % domain_.size());
      off /= domain_.size();
    }
    return {rel, args};
  }
  throw ValidationError("tuple index out of range");
}

std::vector<std::size_t> Signature::tuples_of(const std::string& rel) const {
  std::vector<std::size_t> out;
  std::size_t b = base(rel);
  std::size_t n = power(domain_.size(), arity(rel));
  for (std::size_t i = 0; i < n; ++i) out.push_back(b + i);
  return out;
}

Lanes lanes_from_database(const Signature& sig, const Database& db) {
  Lanes w(sig.tuple_count(), 0);
  for (const auto& rel : db.predicates()) {
    if (!sig.has_relation(rel)) continue;
    for (const auto& t : db.relation(rel)) {
      std::vector<int> args;
      for (const auto& c : t) {
        int e = sig.element(c);
        if (e < 0) throw ValidationError("constant " + c + " is outside the domain");
        args.push_back(e);
      }
      w[sig.index(rel, args)] = ~std::uint64_t{0};
    }
  }
  return w;
}

Database lane_database(const Signature& sig, const Lanes& w, int lane) {
  Database db;
  for (const auto& [rel, a] : sig.relations()) db.declare(rel, a);
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (!((w[t] >> lane) & 1)) continue;
    auto [rel, args] = sig.tuple(t);
    Tuple tup;
    for (int e : args) tup.push_back(sig.domain()[static_cast<std::size_t>(e)]);
    db.insert(rel, tup);
  }
  return db;
}

std::vector<std::uint64_t> active_words(const Signature& sig, const Lanes& w, const std::set<int>& always) {
  std::vector<std::uint64_t> act(sig.size(), 0);
  for (int e : always) act[static_cast<std::size_t>(e)] = ~std::uint64_t{0};
  for (const auto& [rel, a] : sig.relations()) {
    std::size_t b = sig.base(rel);
    std::size_t n = power(sig.size(), a);
    for (std::size_t off = 0; off < n; ++off) {
      std::uint64_t word = w[b + off];
      if (!word) continue;
      std::size_t rest = off;
      for (std::size_t k = 0; k < a; ++k) {
        act[rest % sig.size()] |= word;
        rest /= sig.size();
      }
    }
  }
  return act;
}

CompiledFormula::CompiledFormula(const Formula& f, const Signature& sig, const std::vector<std::string>& params)
    : sig_(&sig) {
  std::map<std::string, int> scope;
  for (const auto& p : params) scope[p] = slots_++;
  std::vector<std::string> closure;
  for (const auto& v : free_variables(f))
    if (!scope.count(v)) closure.push_back(v);
  root_ = compile(closure.empty() ? f : Formula::forall(closure, f), scope);
}

int CompiledFormula::compile(const Formula& f, std::map<std::string, int>& scope) {
  Node n;
  auto encode = [&](const Term& t) {
    if (t.is_variable()) {
      auto it = scope.find(t.name());
      if (it == scope.end()) throw ValidationError("unbound variable " + t.name());
      return it->second;
    }
    int e = sig_->element(t.name());
    if (e < 0) throw ValidationError("constant " + t.name() + " is outside the domain");
    constants_.insert(e);
    return -e - 1;
  };
  switch (f.kind()) {
    case Formula::Kind::kTrue:
      n.kind = Node::Kind::kTrue;
      break;
    case Formula::Kind::kFalse:
      n.kind = Node::Kind::kFalse;
      break;
    case Formula::Kind::kAtom: {
      const Atom& a = f.atom_value();
      n.kind = a.is_equality() ? Node::Kind::kEq : Node::Kind::kAtom;
      if (!a.is_equality()) {
        if (sig_->arity(a.predicate()) != a.arity()) throw ValidationError("arity mismatch on " + a.predicate());
        n.base = sig_->base(a.predicate());
      }
      for (const auto& t : a.args()) n.args.push_back(encode(t));
      break;
    }
    case Formula::Kind::kNot:
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
      n.kind = f.kind() == Formula::Kind::kNot   ? Node::Kind::kNot
               : f.kind() == Formula::Kind::kAnd ? Node::Kind::kAnd
                                                 : Node::Kind::kOr;
      for (const auto& k : f.children()) n.kids.push_back(compile(k, scope));
      break;
    case Formula::Kind::kForall: {
      n.kind = Node::Kind::kForall;
      std::map<std::string, int> inner = scope;
      for (const auto& v : f.bound()) {
        inner[v] = slots_;
        n.slots.push_back(slots_++);
      }
      n.kids.push_back(compile(f.child(), inner));
      break;
    }
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

std::uint64_t CompiledFormula::eval(const Lanes& w, std::span<const int> params) const {
  return eval(w, active_words(*sig_, w, constants_), params);
}

std::uint64_t CompiledFormula::eval(const Lanes& w, const std::vector<std::uint64_t>& active,
                                    std::span<const int> params) const {
  std::vector<int> env(static_cast<std::size_t>(slots_), 0);
  std::copy(params.begin(), params.end(), env.begin());
  return run(root_, w, active, env);
}

std::uint64_t CompiledFormula::run(int id, const Lanes& w, const std::vector<std::uint64_t>& active,
                                   std::vector<int>& env) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  auto value = [&](int a) { return a >= 0 ? env[static_cast<std::size_t>(a)] : -a - 1; };
  switch (n.kind) {
    case Node::Kind::kTrue:
      return ~std::uint64_t{0};
    case Node::Kind::kFalse:
      return 0;
    case Node::Kind::kAtom: {
      std::size_t i = 0;
      for (int a : n.args) i = i * sig_->size() + static_cast<std::size_t>(value(a));
      return w[n.base + i];
    }
    case Node::Kind::kEq: {
      std::size_t k = n.args.size() / 2;
      for (std::size_t i = 0; i < k; ++i)
        if (value(n.args[i]) != value(n.args[k + i])) return 0;
      return ~std::uint64_t{0};
    }
    case Node::Kind::kNot:
      return ~run(n.kids.front(), w, active, env);
    case Node::Kind::kAnd: {
      std::uint64_t acc = ~std::uint64_t{0};
      for (int k : n.kids) {
        acc &= run(k, w, active, env);
        if (!acc) break;
      }
      return acc;
    }
    case Node::Kind::kOr: {
      std::uint64_t acc = 0;
      for (int k : n.kids) {
        acc |= run(k, w, active, env);
        if (!~acc) break;
      }
      return acc;
    }
    case Node::Kind::kForall:
      return quantify(n, 0, w, active, env);
  }
  return 0;
}

std::uint64_t CompiledFormula::quantify(const Node& n, std::size_t i, const Lanes& w,
                                        const std::vector<std::uint64_t>& active, std::vector<int>& env) const {
  if (i == n.slots.size()) return run(n.kids.front(), w, active, env);
  std::uint64_t acc = ~std::uint64_t{0};
  for (std::size_t d = 0; d < sig_->size() && acc; ++d) {
    if (!active[d]) continue;
    env[static_cast<std::size_t>(n.slots[i])] = static_cast<int>(d);
    acc &= quantify(n, i + 1, w, active, env) | ~active[d];
  }
  return acc;
}

InstanceBatches::InstanceBatches(const Signature& sig, std::vector<std::size_t> free, std::uint64_t cap)
    : sig_(&sig), free_(std::move(free)) {
  if (free_.size() >= 63 || (std::uint64_t{1} << free_.size()) > cap)
    throw CapExceededError("enumeration of 2^" + std::to_string(free_.size()) + " instances exceeds the cap of " +
                           std::to_string(cap));
}

std::uint64_t InstanceBatches::batch_count() const {
  return free_.size() <= 6 ? 1 : std::uint64_t{1} << (free_.size() - 6);
}

std::uint64_t InstanceBatches::valid_mask() const {
  if (free_.size() >= 6) return ~std::uint64_t{0};
  return (std::uint64_t{1} << (std::uint64_t{1} << free_.size())) - 1;
}

Lanes InstanceBatches::batch(std::uint64_t q) const {
  static constexpr std::uint64_t kPatterns[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                                 0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  Lanes w(sig_->tuple_count(), 0);
  for (std::size_t j = 0; j < free_.size(); ++j) {
    if (j < 6)
      w[free_[j]] = kPatterns[j];
    else
      w[free_[j]] = ((q >> (j - 6)) & 1) ? ~std::uint64_t{0} : 0;
  }
  return w;
}

Database InstanceBatches::instance(std::uint64_t n) const {
  Lanes w(sig_->tuple_count(), 0);
  for (std::size_t j = 0; j < free_.size(); ++j)
    if ((n >> j) & 1) w[free_[j]] = ~std::uint64_t{0};
  return lane_database(*sig_, w, 0);
}

bool eval_sentence(const Formula& f, const Database& db) {
  std::set<std::string> dom = db.active_domain();
  for (const auto& c : formula_constants(f)) dom.insert(c);
  std::map<std::string, std::size_t> rels;
  for (const auto& p : db.predicates()) rels[p] = *db.arity(p);
  for (const auto& [p, a] : formula_predicates(f)) {
    auto [it, fresh] = rels.emplace(p, a);
    if (!fresh && it->second != a) throw ValidationError("arity mismatch on " + p);
  }
  Signature sig(std::vector<std::string>(dom.begin(), dom.end()), rels);
  Lanes w = lanes_from_database(sig, db);
  return CompiledFormula(f, sig).eval(w) & 1;
}

}  // namespace swp
