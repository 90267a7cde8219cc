#include "rhilab/step_weight.hpp"

#include <algorithm>
#include <cmath>

#include "rhilab/errors.hpp"

namespace rhilab {

StepWeight::StepWeight(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty()) throw DomainError("step weight needs at least one piece");
  if (breakpoints_.size() != values_.size() + 1)
    throw DomainError("step weight with " + std::to_string(values_.size()) + " values needs " +
                      std::to_string(values_.size() + 1) + " breakpoints, got " +
                      std::to_string(breakpoints_.size()));
  for (std::size_t k = 1; k < breakpoints_.size(); ++k)
    if (!(breakpoints_[k - 1] < breakpoints_[k]))
      throw DomainError("breakpoints must strictly increase: breakpoint " + std::to_string(k) +
                        " (" + breakpoints_[k].str() + ") <= breakpoint " + std::to_string(k - 1) +
                        " (" + breakpoints_[k - 1].str() + ")");
  for (std::size_t k = 0; k < values_.size(); ++k)
    if (values_[k].sign() <= 0)
      throw DomainError("value " + std::to_string(k) + " must be positive, got " + values_[k].str());
  cumulative_.reserve(breakpoints_.size());
  cumulative_.emplace_back(0);
  for (std::size_t k = 0; k < values_.size(); ++k)
    cumulative_.push_back(cumulative_.back() + values_[k] * (breakpoints_[k + 1] - breakpoints_[k]));
}

StepWeight StepWeight::constant(const Interval& support, const Rational& c) {
  return StepWeight({support.lo(), support.hi()}, {c});
}

std::size_t StepWeight::piece_index(const Rational& x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return 0;
  std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return std::min(k, values_.size() - 1);
}

Rational StepWeight::cumulative(const Rational& x) const {
  if (x <= breakpoints_.front()) return Rational(0);
  if (x >= breakpoints_.back()) return cumulative_.back();
  const std::size_t k = piece_index(x);
  return cumulative_[k] + values_[k] * (x - breakpoints_[k]);
}

Rational StepWeight::mass(const Interval& j) const {
  if (!support().contains(j))
    throw DomainError("interval (" + j.lo().str() + ", " + j.hi().str() + ") is not inside the support");
  return cumulative(j.hi()) - cumulative(j.lo());
}

bool StepWeight::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](const Rational& v) { return v == values_[0]; });
}

Rational StepWeight::max_value() const { return *std::max_element(values_.begin(), values_.end()); }
Rational StepWeight::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

Rational average(const StepWeight& w, const Interval& j) { return w.mass(j) / j.length(); }

StepWeight restrict(const StepWeight& w, const Interval& j) {
  if (!w.support().contains(j))
    throw DomainError("cannot restrict to (" + j.lo().str() + ", " + j.hi().str() + "): not inside the support");
  std::vector<Rational> xs{j.lo()};
  std::vector<Rational> vs;
  const auto bp = w.breakpoints();
  for (std::size_t k = 0; k < w.pieces(); ++k) {
    if (bp[k + 1] <= j.lo() || bp[k] >= j.hi()) continue;
    vs.push_back(w.values()[k]);
    xs.push_back(min(bp[k + 1], j.hi()));
  }
  return StepWeight(std::move(xs), std::move(vs));
}

Real power_integral(const StepWeight& w, const Interval& j, long double r) {
  if (!w.support().contains(j))
    throw DomainError("interval (" + j.lo().str() + ", " + j.hi().str() + ") is not inside the support");
  const auto bp = w.breakpoints();
  const bool integral = std::nearbyint(r) == r && std::fabs(r) <= 64.0L;
  if (integral) {
    const int k = static_cast<int>(r);
    Rational sum(0);
    for (std::size_t i = 0; i < w.pieces(); ++i) {
      const Rational lo = max(bp[i], j.lo()), hi = min(bp[i + 1], j.hi());
      if (lo < hi) sum += w.values()[i].pow(k) * (hi - lo);
    }
    return Real::from(sum);
  }
  long double sum = 0.0L;
  for (std::size_t i = 0; i < w.pieces(); ++i) {
    const Rational lo = max(bp[i], j.lo()), hi = min(bp[i + 1], j.hi());
    if (lo < hi) sum += std::pow(w.values()[i].to_long_double(), r) * (hi - lo).to_long_double();
  }
  return Real::approx(sum);
}

Real power_average(const StepWeight& w, const Interval& j, long double r) {
  Real s = power_integral(w, j, r);
  if (s.is_exact()) return Real::from(*s.exact / j.length());
  return Real::approx(s.value / j.length().to_long_double());
}

}  // namespace rhilab
