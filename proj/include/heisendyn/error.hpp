#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heisendyn {

/// Violated precondition of an operation (k out of range, n < 2k, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by exact polynomial division when the remainder is nonzero.
class NotPolynomialError : public std::domain_error {
 public:
  explicit NotPolynomialError(const std::string& what)
      : std::domain_error("not a polynomial: " + what) {}
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::invalid_argument(msg + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A configuration was evaluated outside the region it is defined on.
class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Decomposition f = g1*y + g0 does not exist (degree >= 2 in both variables).
class NotLinearError : public std::domain_error {
 public:
  explicit NotLinearError(const std::string& what)
      : std::domain_error("not linear: " + what) {}
};

/// A theta/complex argument is off the unit circle, or two twisted
/// elements live over different thetas.
class ThetaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two sound certificates contradict each other.  Should never happen.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace heisendyn
