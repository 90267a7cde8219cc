#pragma once

#include <stdexcept>
#include <string>

namespace rhilab {

/// Argument outside the mathematical domain of an operation (e.g. J not inside the support).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exponent outside the admissible range of an inequality.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Malformed input text (weight files, rationals, CLI values).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant did not hold; always an engine bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rhilab
