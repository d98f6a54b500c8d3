#pragma once

#include <string>
#include <vector>

namespace swp {

struct Token {
  enum class Kind {
    kIdent,
    kNumber,
    kLParen,
    kRParen,
    kComma,
    kDot,
    kColon,
    kSemi,
    kBang,
    kAmp,
    kBar,
    kArrow,
    kEq,
    kNeq,
    kImpliedBy,
    kEnd,
  };
  Kind kind;
  std::string text;
  int line;
  int column;
};

// Splits text into tokens; '%' starts a comment running to end of line.
std::vector<Token> tokenize(const std::string& text);

}  // namespace swp
