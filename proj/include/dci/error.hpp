#pragma once

#include <stdexcept>
#include <string>

namespace dci {

/// Violated precondition on an argument (out-of-range point, degree
/// mismatch, invalid parameters, malformed permutation data).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration exceeded its configured budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named verification step failed.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string check, const std::string& detail)
      : std::runtime_error(check + ": " + detail), check_(std::move(check)) {}

  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

}  // namespace dci
