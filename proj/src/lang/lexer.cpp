#include "swp/lang/lexer.hpp"

#include <cctype>

#include "swp/error.hpp"

namespace swp {

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](Token::Kind k, std::size_t len) {
    out.push_back(Token{k, text.substr(i, len), line, col});
    advance(len);
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      while (j < text.size() && text[j] == '\'') ++j;
      push(Token::Kind::kIdent, j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Token::Kind::kNumber, j - i);
      continue;
    }
    auto next = [&](char ch) { return i + 1 < text.size() && text[i + 1] == ch; };
    switch (c) {
      case '(':
        push(Token::Kind::kLParen, 1);
        break;
      case ')':
        push(Token::Kind::kRParen, 1);
        break;
      case ',':
        push(Token::Kind::kComma, 1);
        break;
      case '.':
        push(Token::Kind::kDot, 1);
        break;
      case ';':
        push(Token::Kind::kSemi, 1);
        break;
      case '&':
        push(Token::Kind::kAmp, 1);
        break;
      case '|':
        push(Token::Kind::kBar, 1);
        break;
      case '=':
        push(Token::Kind::kEq, 1);
        break;
      case ':':
        if (next('-'))
          push(Token::Kind::kImpliedBy, 2);
        else
          push(Token::Kind::kColon, 1);
        break;
      case '!':
        if (next('='))
          push(Token::Kind::kNeq, 2);
        else
          push(Token::Kind::kBang, 1);
        break;
      case '-':
        if (next('>')) {
          push(Token::Kind::kArrow, 2);
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(std::string("unexpected character '") + text[i] + "'", line, col);
    }
  }
  out.push_back(Token{Token::Kind::kEnd, "", line, col});
  return out;
}

}  // namespace swp
