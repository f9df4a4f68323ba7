#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace logjet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, non-unit inversion, mixed characteristics.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented invariant. Carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) {}
  explicit ValidationError(const std::string& problem)
      : ValidationError(std::vector<std::string>{problem}) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> problems_;
};

/// Working precision of a truncated computation is too small to decide the
/// requested quantity. `suggested()` is the precision to retry with.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, std::size_t suggested)
      : Error(what), suggested_(suggested) {}
  std::size_t suggested() const { return suggested_; }

 private:
  std::size_t suggested_;
};

/// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), message_(what), line_(line), column_(column) {}
  /// Message without the location prefix.
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace logjet
