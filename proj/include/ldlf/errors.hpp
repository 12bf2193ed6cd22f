/* errors.hpp -- exception types shared across the library */
#pragma once

#include <stdexcept>
#include <string>

namespace ldlf {

// Lexical or syntactic error in any textual input (formulas, traces,
// facts, DOT).  Positions are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, int line = 0, int column = 0)
      : std::runtime_error(format(msg, line, column)),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string &msg, int line, int column) {
    if (line == 0)
      return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
  }
  int line_;
  int column_;
};

// A configured bound was exceeded (determinization state cap, evaluator
// trace-length or quantifier limits).
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string &msg)
      : std::runtime_error(msg) {}
};

// Request that is well-formed but unsupported, e.g. printing a sugared
// connective in a dialect that has no token for it.
class UnsupportedError : public std::runtime_error {
public:
  explicit UnsupportedError(const std::string &msg)
      : std::runtime_error(msg) {}
};

} // namespace ldlf
