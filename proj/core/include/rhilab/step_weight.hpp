#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rhilab/geometry.hpp"
#include "rhilab/rational.hpp"
#include "rhilab/real.hpp"

namespace rhilab {

/// Positive piecewise-constant weight on a bounded interval.
///
/// Piece k (0-based) carries value values()[k] on (breakpoints()[k], breakpoints()[k+1]).
/// Values at breakpoints are never read: all statements are almost-everywhere.
class StepWeight {
 public:
  /// Throws DomainError unless breakpoints strictly increase, values are > 0
  /// and values.size() + 1 == breakpoints.size() >= 2.
  StepWeight(std::vector<Rational> breakpoints, std::vector<Rational> values);

  static StepWeight constant(const Interval& support, const Rational& c);

  std::size_t pieces() const { return values_.size(); }
  std::span<const Rational> breakpoints() const { return breakpoints_; }
  std::span<const Rational> values() const { return values_; }
  Interval support() const { return Interval(breakpoints_.front(), breakpoints_.back()); }
  Interval piece(std::size_t k) const { return Interval(breakpoints_[k], breakpoints_[k + 1]); }

  /// Cumulative mass W(x) = w((lo, x)) for x in the closed support.
  Rational cumulative(const Rational& x) const;
  /// Cumulative mass at breakpoint k (exact, precomputed).
  const Rational& cumulative_at(std::size_t k) const { return cumulative_[k]; }
  /// w(J), J inside the support.
  Rational mass(const Interval& j) const;
  Rational total_mass() const { return cumulative_.back(); }

  /// Index of the piece containing x (x strictly inside the support, off breakpoints
  /// resolved to the piece on the right).
  std::size_t piece_index(const Rational& x) const;

  bool is_constant() const;
  Rational max_value() const;
  Rational min_value() const;

  friend bool operator==(const StepWeight& a, const StepWeight& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  std::vector<Rational> cumulative_;
};

/// w(J)/|J|. Throws DomainError if J is not inside the support.
Rational average(const StepWeight& w, const Interval& j);

/// (1/|J|) * integral over J of w^r. Exact when r is an integer (negative allowed).
Real power_average(const StepWeight& w, const Interval& j, long double r);

/// w restricted to J, with support exactly J.
StepWeight restrict(const StepWeight& w, const Interval& j);

/// Integral over J of w^r (not normalized); exact for integer r.
Real power_integral(const StepWeight& w, const Interval& j, long double r);

}  // namespace rhilab
