#include "swp/lang/parser.hpp"

#include <set>

#include "swp/error.hpp"
#include "swp/lang/lexer.hpp"

namespace swp {

namespace {

const std::set<std::string> kKeywords = {"forall", "exists", "foreach", "do",   "insert", "delete", "if",
                                         "then",   "else",   "skip",    "true", "false",  "not"};

class Parser {
 public:
  Parser(const std::string& text, Schema* schema) : toks_(tokenize(text)), schema_(schema) {}

  bool at_end() const { return peek().kind == Token::Kind::kEnd; }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  Formula formula() {
    if (is_keyword("forall") || is_keyword("exists")) return quantified();
    Formula lhs = disjunction();
    if (accept(Token::Kind::kArrow)) return Formula::implication(lhs, formula());
    return lhs;
  }

  Update update() {
    Update first = statement();
    if (accept(Token::Kind::kSemi)) return Update::seq(first, update());
    return first;
  }

  Rule rule() {
    Rule r;
    r.head = relational_atom();
    if (accept(Token::Kind::kImpliedBy)) {
      do {
        r.body.push_back(body_literal());
      } while (accept(Token::Kind::kComma));
    }
    expect(Token::Kind::kDot, "'.'");
    return r;
  }

  Atom fact() {
    Token start = peek();
    Atom a = relational_atom();
    if (!a.is_ground()) throw ParseError("fact " + to_string(a) + " contains a variable", start.line, start.column);
    expect(Token::Kind::kDot, "'.'");
    return a;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  bool accept(Token::Kind k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  void expect(Token::Kind k, const std::string& what) {
    if (!accept(k)) fail("expected " + what + (at_end() ? " at end of input" : ", found '" + peek().text + "'"));
  }

  bool is_keyword(const std::string& kw, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::kIdent && peek(k).text == kw;
  }

  void expect_keyword(const std::string& kw) {
    if (!is_keyword(kw)) fail("expected '" + kw + "'");
    ++pos_;
  }

  std::string variable() {
    const Token& t = peek();
    if (t.kind != Token::Kind::kIdent || !is_variable_name(t.text)) fail("expected a variable");
    ++pos_;
    return t.text;
  }

  std::vector<std::string> variable_list() {
    std::vector<std::string> vs;
    if (peek().kind != Token::Kind::kIdent || !is_variable_name(peek().text)) return vs;
    do {
      vs.push_back(variable());
    } while (accept(Token::Kind::kComma));
    return vs;
  }

  std::string predicate_name() {
    const Token& t = peek();
    if (t.kind != Token::Kind::kIdent || is_variable_name(t.text) || kKeywords.count(t.text))
      fail("expected a predicate symbol");
    if (is_reserved_symbol(t.text)) fail("symbol '" + t.text + "' is reserved for generated predicates");
    ++pos_;
    return t.text;
  }

  bool at_term() const {
    const Token& t = peek();
    return t.kind == Token::Kind::kNumber || (t.kind == Token::Kind::kIdent && !kKeywords.count(t.text));
  }

  Term term() {
    const Token& t = peek();
    if (!at_term()) fail("expected a term");
    if (peek(1).kind == Token::Kind::kLParen) fail("nested terms are not allowed");
    ++pos_;
    return Term::parse(t.text);
  }

  void register_arity(const std::string& pred, std::size_t arity, const Token& at) {
    auto [it, inserted] = local_.try_emplace(pred, arity);
    if (!inserted && it->second != arity)
      throw ParseError("arity mismatch for " + pred + ": " + std::to_string(it->second) + " vs " +
                           std::to_string(arity),
                       at.line, at.column);
    if (schema_) {
      try {
        schema_->declare(pred, arity);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), at.line, at.column);
      }
    }
  }

  Atom relational_atom() {
    Token start = peek();
    std::string pred = predicate_name();
    std::vector<Term> args;
    if (accept(Token::Kind::kLParen)) {
      do {
        args.push_back(term());
      } while (accept(Token::Kind::kComma));
      expect(Token::Kind::kRParen, "')'");
    }
    register_arity(pred, args.size(), start);
    return Atom::relation(pred, std::move(args));
  }

  std::vector<Term> tuple_or_term() {
    if (accept(Token::Kind::kLParen)) {
      std::vector<Term> ts;
      do {
        ts.push_back(term());
      } while (accept(Token::Kind::kComma));
      expect(Token::Kind::kRParen, "')'");
      return ts;
    }
    return {term()};
  }

  Formula equality_rest(std::vector<Term> lhs) {
    bool neg = peek().kind == Token::Kind::kNeq;
    if (!accept(Token::Kind::kEq) && !accept(Token::Kind::kNeq)) fail("expected '=' or '!='");
    std::vector<Term> rhs = tuple_or_term();
    if (rhs.size() != lhs.size()) fail("tuple width mismatch in equality");
    Formula eq = Formula::atom(Atom::equality(std::move(lhs), std::move(rhs)));
    return neg ? Formula::negation(eq) : eq;
  }

  // Tries "(t1,...,tn) =" / "!="; restores the position on failure.
  std::optional<Formula> try_tuple_equality() {
    std::size_t saved = pos_;
    if (!accept(Token::Kind::kLParen)) return std::nullopt;
    std::vector<Term> ts;
    while (true) {
      if (!at_term() || peek(1).kind == Token::Kind::kLParen) {
        pos_ = saved;
        return std::nullopt;
      }
      ts.push_back(Term::parse(peek().text));
      ++pos_;
      if (accept(Token::Kind::kComma)) continue;
      if (accept(Token::Kind::kRParen)) break;
      pos_ = saved;
      return std::nullopt;
    }
    if (peek().kind != Token::Kind::kEq && peek().kind != Token::Kind::kNeq) {
      pos_ = saved;
      return std::nullopt;
    }
    return equality_rest(std::move(ts));
  }

  Formula quantified() {
    bool universal = is_keyword("forall");
    ++pos_;
    std::vector<std::string> vs = variable_list();
    if (vs.empty()) fail("expected quantified variables");
    expect(Token::Kind::kColon, "':'");
    Formula body = formula();
    return universal ? Formula::forall(vs, body) : Formula::exists(vs, body);
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Token::Kind::kBar)) parts.push_back(conjunction());
    return Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept(Token::Kind::kAmp)) parts.push_back(unary());
    return Formula::conjunction(std::move(parts));
  }

  Formula unary() {
    if (accept(Token::Kind::kBang)) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    if (is_keyword("true")) {
      ++pos_;
      return Formula::truth();
    }
    if (is_keyword("false")) {
      ++pos_;
      return Formula::falsity();
    }
    if (is_keyword("forall") || is_keyword("exists")) return quantified();
    if (peek().kind == Token::Kind::kLParen) {
      if (auto eq = try_tuple_equality()) return *eq;
      ++pos_;
      Formula f = formula();
      expect(Token::Kind::kRParen, "')'");
      return f;
    }
    const Token& t = peek();
    if (t.kind == Token::Kind::kNumber || (t.kind == Token::Kind::kIdent && is_variable_name(t.text)))
      return equality_rest({term()});
    if (t.kind == Token::Kind::kIdent && !kKeywords.count(t.text)) {
      Token::Kind after = peek(1).kind;
      if (after == Token::Kind::kEq || after == Token::Kind::kNeq) return equality_rest({term()});
      return Formula::atom(relational_atom());
    }
    fail(at_end() ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  Literal body_literal() {
    bool neg = false;
    if (accept(Token::Kind::kBang) || (is_keyword("not") && (++pos_, true))) neg = true;
    Formula f = primary();
    if (f.kind() == Formula::Kind::kNot && f.child().kind() == Formula::Kind::kAtom)
      return Literal{f.child().atom_value(), neg};
    if (f.kind() != Formula::Kind::kAtom) fail("expected a literal in rule body");
    return Literal{f.atom_value(), !neg};
  }

  Update atomic_update(std::vector<std::string> vars, Formula qual) {
    bool ins = is_keyword("insert");
    if (!ins && !is_keyword("delete")) fail("expected 'insert' or 'delete'");
    ++pos_;
    Token start = peek();
    std::string target = predicate_name();
    std::vector<std::string> args;
    if (accept(Token::Kind::kLParen)) {
      do {
        args.push_back(variable());
      } while (accept(Token::Kind::kComma));
      expect(Token::Kind::kRParen, "')'");
    }
    if (args.size() != vars.size()) throw ParseError("target arity differs from foreach variables", start.line, start.column);
    register_arity(target, args.size(), start);
    try {
      return ins ? Update::insert(vars, qual, target, args) : Update::remove(vars, qual, target, args);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), start.line, start.column);
    }
  }

  Update statement() {
    if (is_keyword("skip")) {
      ++pos_;
      return Update::skip();
    }
    if (accept(Token::Kind::kLParen)) {
      Update u = update();
      expect(Token::Kind::kRParen, "')'");
      return u;
    }
    if (is_keyword("foreach")) {
      ++pos_;
      std::vector<std::string> vars = variable_list();
      expect(Token::Kind::kColon, "':'");
      Formula qual = formula();
      expect_keyword("do");
      return atomic_update(std::move(vars), std::move(qual));
    }
    if (is_keyword("if")) {
      ++pos_;
      Token start = peek();
      Formula cond = formula();
      Formula matrix;
      try {
        matrix = universal_matrix(cond);
      } catch (const ValidationError& e) {
        throw ParseError(std::string("condition: ") + e.what(), start.line, start.column);
      }
      expect_keyword("then");
      Update then_branch = statement();
      std::optional<Update> else_branch;
      if (is_keyword("else")) {
        ++pos_;
        else_branch = statement();
      }
      return Update::conditional(matrix, then_branch, else_branch);
    }
    if (is_keyword("insert") || is_keyword("delete")) {
      bool ins = is_keyword("insert");
      ++pos_;
      Token start = peek();
      Atom a = relational_atom();
      if (!a.is_ground()) throw ParseError("abbreviated insert/delete needs a ground atom", start.line, start.column);
      std::vector<std::string> vars;
      std::vector<Term> vt;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        vars.push_back("X" + std::to_string(i + 1));
        vt.push_back(Term::variable(vars.back()));
      }
      Formula qual = vars.empty() ? Formula::truth() : Formula::atom(Atom::equality(vt, a.args()));
      return ins ? Update::insert(vars, qual, a.predicate()) : Update::remove(vars, qual, a.predicate());
    }
    fail(at_end() ? "expected an update statement" : "unexpected '" + peek().text + "' in update");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Schema* schema_;
  std::map<std::string, std::size_t> local_;
};

}  // namespace

bool is_reserved_symbol(const std::string& pred) {
  if (pred.rfind("delta_", 0) == 0 || pred.rfind("t_del_", 0) == 0) return true;
  auto p = pred.rfind("_prime");
  if (p == std::string::npos || p == 0) return false;
  for (std::size_t i = p + 6; i < pred.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(pred[i]))) return false;
  return true;
}

Formula parse_formula(const std::string& text, Schema* schema) {
  Parser p(text, schema);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Formula parse_constraint(const std::string& text, Schema* schema) {
  return universal_matrix(parse_formula(text, schema));
}

Update parse_update(const std::string& text, Schema* schema) {
  Parser p(text, schema);
  Update u = p.update();
  p.expect_end();
  return u;
}

DatalogProgram parse_program(const std::string& text, Schema* schema) {
  Parser p(text, schema);
  DatalogProgram prog;
  while (!p.at_end()) {
    Rule r = p.rule();
    prog.add_rule(std::move(r));
  }
  if (schema)
    for (const auto& [pred, info] : prog.schema().entries()) schema->declare(pred, info.arity, info.kind);
  return prog;
}

Database parse_database(const std::string& text, Schema* schema) {
  Parser p(text, schema);
  Database db;
  while (!p.at_end()) {
    Atom a = p.fact();
    Tuple t;
    for (const auto& x : a.args()) t.push_back(x.name());
    db.insert(a.predicate(), t);
  }
  return db;
}

}  // namespace swp
