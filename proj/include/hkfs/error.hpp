#pragma once

#include <stdexcept>
#include <string>

namespace hkfs {

// Error categories double as CLI exit codes.
enum class ErrorKind : int {
  parse = 1,
  domain = 2,
  budget = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

/// Malformed text input (polynomials, rationals, points, JSON files).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

/// A mathematical precondition does not hold for otherwise well-formed input.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

/// The truncated algebra would exceed the configured dimension cap.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(ErrorKind::budget, what) {}
};

}  // namespace hkfs
