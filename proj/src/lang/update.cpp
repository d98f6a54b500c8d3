#include "swp/lang/update.hpp"

#include <algorithm>

#include "swp/error.hpp"

namespace swp {

struct Update::Node {
  Kind kind = Kind::kSkip;
  std::vector<std::string> vars;
  Formula qual;
  std::string target;
  std::vector<std::string> target_args;
  bool snapshot = false;
  Formula cond;
  std::vector<Update> kids;
  bool has_else = false;
};

Update::Update() : Update(skip()) {}

namespace {

void check_target(const std::vector<std::string>& vars, const std::vector<std::string>& args,
                  const std::string& target) {
  auto a = args;
  auto v = vars;
  std::sort(a.begin(), a.end());
  std::sort(v.begin(), v.end());
  if (a != v || std::adjacent_find(v.begin(), v.end()) != v.end())
    throw ValidationError("target arguments of " + target + " must be the distinct foreach variables");
}

}  // namespace

Update Update::insert(std::vector<std::string> vars, Formula qual, std::string target,
                      std::vector<std::string> target_args, bool snapshot) {
  if (target_args.empty()) target_args = vars;
  check_target(vars, target_args, target);
  Node n;
  n.kind = Kind::kInsert;
  n.vars = std::move(vars);
  n.qual = std::move(qual);
  n.target = std::move(target);
  n.target_args = std::move(target_args);
  n.snapshot = snapshot;
  return Update(std::make_shared<const Node>(std::move(n)));
}

Update Update::remove(std::vector<std::string> vars, Formula qual, std::string target,
                      std::vector<std::string> target_args) {
  if (target_args.empty()) target_args = vars;
  check_target(vars, target_args, target);
  Node n;
  n.kind = Kind::kDelete;
  n.vars = std::move(vars);
  n.qual = std::move(qual);
  n.target = std::move(target);
  n.target_args = std::move(target_args);
  return Update(std::make_shared<const Node>(std::move(n)));
}

Update Update::seq(Update first, Update second) {
  Node n;
  n.kind = Kind::kSeq;
  n.kids = {std::move(first), std::move(second)};
  return Update(std::make_shared<const Node>(std::move(n)));
}

Update Update::conditional(Formula cond, Update then_branch, std::optional<Update> else_branch) {
  Node n;
  n.kind = Kind::kIf;
  n.cond = std::move(cond);
  n.has_else = else_branch.has_value();
  n.kids = {std::move(then_branch), else_branch ? std::move(*else_branch) : skip()};
  return Update(std::make_shared<const Node>(std::move(n)));
}

Update Update::skip() {
  static const auto n = std::make_shared<const Node>();
  return Update(n);
}

Update::Kind Update::kind() const { return node_->kind; }
const std::vector<std::string>& Update::vars() const { return node_->vars; }
const Formula& Update::qual() const { return node_->qual; }
const std::string& Update::target() const { return node_->target; }
const std::vector<std::string>& Update::target_args() const { return node_->target_args; }
bool Update::is_snapshot() const { return node_->snapshot; }
const Formula& Update::cond() const { return node_->cond; }
const Update& Update::first() const { return node_->kids.at(0); }
const Update& Update::second() const { return node_->kids.at(1); }
bool Update::has_else() const { return node_->has_else; }

bool operator==(const Update& a, const Update& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.vars == y.vars && x.qual == y.qual && x.target == y.target &&
         x.target_args == y.target_args && x.snapshot == y.snapshot && x.cond == y.cond && x.kids == y.kids &&
         x.has_else == y.has_else;
}

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s;
}

std::string print(const Update& u, bool nested) {
  switch (u.kind()) {
    case Update::Kind::kSkip:
      return "skip";
    case Update::Kind::kInsert:
    case Update::Kind::kDelete: {
      std::string s = "foreach " + join(u.vars()) + " : " + to_string(u.qual()) + " do ";
      s += u.kind() == Update::Kind::kInsert ? "insert " : "delete ";
      s += u.target();
      if (!u.target_args().empty()) s += "(" + join(u.target_args()) + ")";
      return s;
    }
    case Update::Kind::kSeq: {
      std::string s = print(u.first(), true) + " ; " + print(u.second(), true);
      return nested ? "(" + s + ")" : s;
    }
    case Update::Kind::kIf: {
      std::string s = "if " + to_string(close_universally(u.cond())) + " then " + print(u.first(), true);
      if (u.has_else()) s += " else " + print(u.second(), true);
      return nested ? "(" + s + ")" : s;
    }
  }
  return "";
}

}  // namespace

std::string to_string(const Update& u) { return print(u, false); }

std::set<std::string> update_constants(const Update& u) {
  std::set<std::string> out;
  switch (u.kind()) {
    case Update::Kind::kInsert:
    case Update::Kind::kDelete:
      out = formula_constants(u.qual());
      break;
    case Update::Kind::kIf:
      out = formula_constants(u.cond());
      [[fallthrough]];
    case Update::Kind::kSeq:
      for (const Update* k : {&u.first(), &u.second()}) {
        auto sub = update_constants(*k);
        out.insert(sub.begin(), sub.end());
      }
      break;
    case Update::Kind::kSkip:
      break;
  }
  return out;
}

std::map<std::string, std::size_t> update_predicates(const Update& u) {
  std::map<std::string, std::size_t> out;
  switch (u.kind()) {
    case Update::Kind::kInsert:
    case Update::Kind::kDelete:
      out = formula_predicates(u.qual());
      out[u.target()] = u.vars().size();
      break;
    case Update::Kind::kIf:
      out = formula_predicates(u.cond());
      [[fallthrough]];
    case Update::Kind::kSeq:
      for (const Update* k : {&u.first(), &u.second()}) {
        auto sub = update_predicates(*k);
        out.insert(sub.begin(), sub.end());
      }
      break;
    case Update::Kind::kSkip:
      break;
  }
  return out;
}

std::set<std::string> updated_predicates(const Update& u) {
  std::set<std::string> out;
  switch (u.kind()) {
    case Update::Kind::kInsert:
    case Update::Kind::kDelete:
      out.insert(u.target());
      break;
    case Update::Kind::kIf:
    case Update::Kind::kSeq:
      for (const Update* k : {&u.first(), &u.second()}) {
        auto sub = updated_predicates(*k);
        out.insert(sub.begin(), sub.end());
      }
      break;
    case Update::Kind::kSkip:
      break;
  }
  return out;
}

int update_depth(const Update& u) {
  switch (u.kind()) {
    case Update::Kind::kSeq:
    case Update::Kind::kIf:
      return 1 + std::max(update_depth(u.first()), update_depth(u.second()));
    default:
      return 1;
  }
}

}  // namespace swp
