#pragma once

#include <optional>

#include "rhilab/rational.hpp"

namespace rhilab {

/// Extended-precision value (x87 long double, 64-bit mantissa) that remembers
/// whether it was promoted from an exact Rational.
struct Real {
  long double value = 0.0L;
  std::optional<Rational> exact;

  Real() = default;
  static Real from(const Rational& q) { return Real(q.to_long_double(), q); }
  static Real approx(long double v) { return Real(v, std::nullopt); }

  bool is_exact() const { return exact.has_value(); }

 private:
  Real(long double v, std::optional<Rational> q) : value(v), exact(std::move(q)) {}
};

/// Global comparison policy for inexact verdicts: lhs <= rhs * (1 + relative).
struct TolerancePolicy {
  long double relative = 1e-9L;
};

TolerancePolicy tolerance();
void set_tolerance(TolerancePolicy policy);

/// lhs <= rhs under the policy; exact comparison when both sides are exact.
bool within_tolerance(const Real& lhs, const Real& rhs);
bool within_tolerance(long double lhs, long double rhs, long double relative);

}  // namespace rhilab
