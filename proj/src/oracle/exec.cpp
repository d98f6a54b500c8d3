#include "swp/oracle/exec.hpp"

#include <optional>

#include "swp/datalog/evaluate.hpp"
#include "swp/error.hpp"

namespace swp {

struct CompiledUpdate::Step {
  Update::Kind kind = Update::Kind::kSkip;
  std::optional<CompiledFormula> formula;  // qualification or condition
  std::string target;
  std::vector<std::size_t> positions;  // target argument i is foreach variable positions[i]
  std::size_t width = 0;
  std::shared_ptr<const Step> first, second;
};

namespace {

std::shared_ptr<const CompiledUpdate::Step> build(const Update& u, const Signature& sig) {
  auto s = std::make_shared<CompiledUpdate::Step>();
  s->kind = u.kind();
  switch (u.kind()) {
    case Update::Kind::kSkip:
      break;
    case Update::Kind::kInsert:
    case Update::Kind::kDelete: {
      s->formula.emplace(u.qual(), sig, u.vars());
      s->target = u.target();
      s->width = u.vars().size();
      for (const auto& a : u.target_args())
        for (std::size_t i = 0; i < u.vars().size(); ++i)
          if (u.vars()[i] == a) s->positions.push_back(i);
      break;
    }
    case Update::Kind::kSeq:
      s->first = build(u.first(), sig);
      s->second = build(u.second(), sig);
      break;
    case Update::Kind::kIf:
      s->formula.emplace(u.cond(), sig);
      s->first = build(u.first(), sig);
      s->second = build(u.second(), sig);
      break;
  }
  return s;
}

void run(const CompiledUpdate::Step& s, const Signature& sig, Lanes& w) {
  switch (s.kind) {
    case Update::Kind::kSkip:
      return;
    case Update::Kind::kSeq:
      run(*s.first, sig, w);
      run(*s.second, sig, w);
      return;
    case Update::Kind::kIf: {
      std::uint64_t c = s.formula->eval(w);
      Lanes a = w, b = w;
      run(*s.first, sig, a);
      run(*s.second, sig, b);
      for (std::size_t t = 0; t < w.size(); ++t) w[t] = (c & a[t]) | (~c & b[t]);
      return;
    }
    case Update::Kind::kInsert:
    case Update::Kind::kDelete: {
      auto active = active_words(sig, w, s.formula->constants());
      std::vector<std::pair<std::size_t, std::uint64_t>> writes;
      std::vector<int> env(s.width, 0);
      std::vector<int> args(s.positions.size());
      std::size_t n = sig.size();
      if (n == 0 && s.width > 0) return;
      while (true) {
        std::uint64_t sel = ~std::uint64_t{0};
        for (int e : env) sel &= active[static_cast<std::size_t>(e)];
        if (sel) sel &= s.formula->eval(w, active, env);
        if (sel) {
          for (std::size_t i = 0; i < args.size(); ++i) args[i] = env[s.positions[i]];
          writes.emplace_back(sig.index(s.target, args), sel);
        }
        std::size_t k = 0;
        while (k < env.size() && static_cast<std::size_t>(++env[k]) == n) env[k++] = 0;
        if (k == env.size()) break;
      }
      for (const auto& [t, sel] : writes) {
        if (s.kind == Update::Kind::kInsert)
          w[t] |= sel;
        else
          w[t] &= ~sel;
      }
      return;
    }
  }
}

Signature signature_for(const Update& u, const Database& b) {
  std::set<std::string> dom = b.active_domain();
  for (const auto& c : update_constants(u)) dom.insert(c);
  std::map<std::string, std::size_t> rels;
  for (const auto& p : b.predicates()) rels[p] = *b.arity(p);
  for (const auto& [p, a] : update_predicates(u)) {
    auto [it, fresh] = rels.emplace(p, a);
    if (!fresh && it->second != a) throw ValidationError("arity mismatch on " + p);
  }
  return Signature(std::vector<std::string>(dom.begin(), dom.end()), rels);
}

}  // namespace

CompiledUpdate::CompiledUpdate(const Update& u, const Signature& sig) : root_(build(u, sig)), sig_(&sig) {}

void CompiledUpdate::apply(Lanes& w) const { run(*root_, *sig_, w); }

Database exec_update(const Update& u, const Database& b) {
  Signature sig = signature_for(u, b);
  Lanes w = lanes_from_database(sig, b);
  CompiledUpdate(u, sig).apply(w);
  return lane_database(sig, w, 0);
}

Database exec_update_deductive(const Update& u, const DatalogProgram& p, const Database& b) {
  switch (u.kind()) {
    case Update::Kind::kSkip:
      return b;
    case Update::Kind::kSeq:
      return exec_update_deductive(u.second(), p, exec_update_deductive(u.first(), p, b));
    case Update::Kind::kIf: {
      bool c = eval_sentence(u.cond(), evaluate(p, b));
      return exec_update_deductive(c ? u.first() : u.second(), p, b);
    }
    case Update::Kind::kInsert:
    case Update::Kind::kDelete:
      break;
  }
  if (u.kind() == Update::Kind::kDelete && p.is_idb(u.target()))
    throw UnsupportedError("delete from derived relation " + u.target());
  Interpretation m = evaluate(p, b);
  // Run the statement on the model, then copy the target's change back.
  Database after = exec_update(u, m);
  Database out = b;
  out.declare(u.target(), u.vars().size());
  const auto& before = m.relation(u.target());
  for (const auto& t : after.relation(u.target())) {
    if (!before.count(t)) out.insert(u.target(), t);
  }
  for (const auto& t : before)
    if (!after.contains(u.target(), t)) out.erase(u.target(), t);
  return out;
}

}  // namespace swp
