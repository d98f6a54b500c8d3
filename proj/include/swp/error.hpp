#pragma once

#include <stdexcept>
#include <string>

namespace swp {

// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Well-formed input that violates a semantic restriction (arity, safety, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input outside the supported fragment (non-linear delta, hypothesis failure).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// The generated-conjunct cap was exceeded.
class BlowupError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured instance cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace swp
