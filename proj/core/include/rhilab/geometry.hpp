#pragma once

#include <vector>

#include "rhilab/rational.hpp"

namespace rhilab {

/// Open interval (lo, hi) with lo < hi.
class Interval {
 public:
  Interval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }

  bool contains(const Rational& x) const { return lo_ < x && x < hi_; }
  bool contains_closed(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& j) const { return lo_ <= j.lo_ && j.hi_ <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;
  /// Lexicographic (lo, hi); used to break ties between witnesses.
  friend bool operator<(const Interval& a, const Interval& b) {
    return a.lo_ < b.lo_ || (a.lo_ == b.lo_ && a.hi_ < b.hi_);
  }

 private:
  Rational lo_;
  Rational hi_;
};

/// Axis-parallel cube in R^n.
class Cube {
 public:
  Cube(std::vector<Rational> lo, Rational side);

  int dimension() const { return static_cast<int>(lo_.size()); }
  const std::vector<Rational>& lo() const { return lo_; }
  const Rational& side() const { return side_; }
  Interval axis(int i) const { return Interval(lo_[i], lo_[i] + side_); }
  Rational volume() const { return side_.pow(dimension()); }

  friend bool operator==(const Cube&, const Cube&) = default;

 private:
  std::vector<Rational> lo_;
  Rational side_;
};

}  // namespace rhilab
