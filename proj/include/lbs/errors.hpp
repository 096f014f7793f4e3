#pragma once

#include <stdexcept>
#include <string>

namespace lbs {

// Bad arguments: out-of-range indices, violated preconditions, exceeded
// enumeration caps or memory budgets.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed text input; line is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace lbs
