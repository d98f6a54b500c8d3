#include "swp/oracle/generate.hpp"

#include <algorithm>
#include <optional>
#include <random>

namespace swp {

std::vector<std::string> domain_constants(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "k" + std::to_string(i));
  return out;
}

namespace {

class Generator {
 public:
  explicit Generator(const GenConfig& cfg)
      : cfg_(cfg), rng_(cfg.seed), consts_(domain_constants(cfg.domain_size)) {
    for (const auto& [p, a] : cfg.relations) rels_.emplace_back(p, a);
  }

  GeneratedCase run() {
    GeneratedCase g;
    for (const auto& [p, a] : rels_) {
      g.db.declare(p, a);
      std::vector<int> idx(a, 0);
      while (true) {
        if (chance(0.3)) {
          Tuple t;
          for (int i : idx) t.push_back(consts_[static_cast<std::size_t>(i)]);
          g.db.insert(p, t);
        }
        std::size_t k = 0;
        while (k < a && static_cast<std::size_t>(++idx[k]) == consts_.size()) idx[k++] = 0;
        if (k == a) break;
      }
    }
    g.constraint = Formula::from_clause(clause());
    g.update = update(cfg_.max_depth);
    return g;
  }

 private:
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  Term constant() { return Term::constant(consts_[pick(consts_.size())]); }

  Term term_over(const std::vector<std::string>& vars, double p_const) {
    if (vars.empty() || chance(p_const)) return constant();
    return Term::variable(vars[pick(vars.size())]);
  }

  Atom random_atom(const std::vector<std::string>& vars, double p_const) {
    const auto& [p, a] = rels_[pick(rels_.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < a; ++i) args.push_back(term_over(vars, p_const));
    return Atom::relation(p, args);
  }

  // Side literal over already-bound variables.
  Literal side_literal(const std::vector<std::string>& vars) {
    if (!vars.empty() && chance(0.25)) {
      Term lhs = Term::variable(vars[pick(vars.size())]);
      Term rhs = chance(0.5) || vars.size() < 2 ? constant() : Term::variable(vars[pick(vars.size())]);
      return Literal{Atom::equality(lhs, rhs), chance(0.5)};
    }
    return Literal{random_atom(vars, 0.2), chance(0.5)};
  }

  // Range-restricted clause: every variable occurs in a negative relational literal.
  Clause clause() {
    static const std::vector<std::string> pool = {"X", "Y", "Z"};
    std::vector<std::string> vars(pool.begin(), pool.begin() + 1 + static_cast<long>(pick(pool.size())));
    std::vector<Literal> lits;
    std::vector<std::string> used;
    std::size_t negs = 1 + pick(2);
    for (std::size_t i = 0; i < negs; ++i) {
      Atom a = random_atom(vars, 0.15);
      for (const auto& t : a.args())
        if (t.is_variable() && std::find(used.begin(), used.end(), t.name()) == used.end()) used.push_back(t.name());
      lits.push_back(Literal{a, false});
    }
    std::size_t extra = pick(3);
    for (std::size_t i = 0; i < extra; ++i) lits.push_back(side_literal(used));
    return Clause(lits);
  }

  Formula qual_conjunction(const std::vector<std::string>& vars) {
    std::vector<Formula> parts;
    std::vector<std::string> bound;
    for (const auto& v : vars) {
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
      if (chance(0.2)) {
        parts.push_back(Formula::atom(Atom::equality(Term::variable(v), constant())));
        bound.push_back(v);
        continue;
      }
      const auto& [p, a] = rels_[pick(rels_.size())];
      std::vector<Term> args;
      std::size_t at = pick(a);
      for (std::size_t i = 0; i < a; ++i) args.push_back(i == at ? Term::variable(v) : term_over(vars, 0.3));
      for (const auto& t : args)
        if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name()) == bound.end())
          bound.push_back(t.name());
      parts.push_back(Formula::atom(Atom::relation(p, args)));
    }
    if (parts.empty() || chance(0.5)) {
      Literal l = side_literal(vars);
      parts.push_back(Formula::literal(l));
    }
    return Formula::conjunction(std::move(parts));
  }

  Update atomic() {
    const auto& [target, a] = rels_[pick(rels_.size())];
    static const std::vector<std::string> names = {"X", "Y", "Z", "W"};
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < a; ++i) vars.push_back(i < names.size() ? names[i] : "X" + std::to_string(i));
    Formula q = qual_conjunction(vars);
    if (chance(0.25)) q = Formula::disjunction({q, qual_conjunction(vars)});
    return chance(0.5) ? Update::insert(vars, q, target) : Update::remove(vars, q, target);
  }

  Update update(int depth) {
    if (depth <= 1) return chance(0.05) ? Update::skip() : atomic();
    double x = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (x < 0.3) return atomic();
    if (x < 0.65) {
      Update first = update(depth - 1);
      return Update::seq(first, update(depth - 1));
    }
    Formula cond;
    if (chance(0.4)) {
      Atom a = random_atom({}, 1.0);
      cond = Formula::literal(Literal{a, chance(0.5)});
    } else {
      cond = Formula::from_clause(clause());
    }
    Update then_branch = update(depth - 1);
    std::optional<Update> els;
    if (chance(0.6)) els = update(depth - 1);
    return Update::conditional(cond, then_branch, els);
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<std::string> consts_;
  std::vector<std::pair<std::string, std::size_t>> rels_;
};

}  // namespace

GeneratedCase generate_case(const GenConfig& cfg) { return Generator(cfg).run(); }

}  // namespace swp
