#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace nwr {

// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based; 0 when the error is not tied to a
// particular line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

// A precondition on arguments was violated (bad index, wrong arity, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An enumeration or search would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Rational arithmetic left the representable range.
class Overflow : public Error {
 public:
  using Error::Error;
};

}  // namespace nwr
