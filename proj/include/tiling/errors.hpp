#pragma once

#include <stdexcept>
#include <string>

namespace tiling {

/// Precondition violated by an argument (zero modulus, empty set, non-coprime moduli, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A 64-bit intermediate would have wrapped.
class ArithmeticError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// The fill-out memo hit its byte budget. Never recovered from silently:
/// dropping branches would make the enumeration incomplete.
class MemoCapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (set literals, skip lists, report files).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tiling
