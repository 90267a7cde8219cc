#pragma once

#include <span>
#include <vector>

#include "rhilab/maximal.hpp"
#include "rhilab/report.hpp"
#include "rhilab/step_weight.hpp"

namespace rhilab {

/// Candidate endpoints for interval suprema: the base points plus every gap
/// between consecutive base points cut into 2^depth equal parts.
class RefinementGrid {
 public:
  RefinementGrid(std::vector<Rational> base, int depth);
  static RefinementGrid for_weight(const StepWeight& w, int depth);

  int depth() const { return depth_; }
  const std::vector<Rational>& base() const { return base_; }
  const std::vector<Rational>& points() const { return points_; }
  RefinementGrid refined(int extra = 1) const { return RefinementGrid(base_, depth_ + extra); }

 private:
  std::vector<Rational> base_;
  int depth_;
  std::vector<Rational> points_;
};

inline constexpr int kDefaultDepth = 6;
inline constexpr int kMaxEscalationDepth = 10;

/// Exact essential supremum of M(w 1_I)/w over the support I.
ConstantReport a1_constant(const StepWeight& w);
/// Same with the backward operator M-.
ConstantReport a1_plus_constant(const StepWeight& w);

/// Floating counterparts (same algorithm in long double); used on very fine discretizations.
long double a1_constant_fast(const StepWeight& w);
long double a1_plus_constant_fast(const StepWeight& w);
/// Raw form: breakpoints x_0 < ... < x_m and m positive values.
long double a1_constant_fast(std::span<const long double> breakpoints, std::span<const long double> values,
                             bool plus_only);

ConstantReport ap_constant(const StepWeight& w, long double p, const RefinementGrid& grid);
ConstantReport fujii_wilson_constant(const StepWeight& w, const RefinementGrid& grid);
ConstantReport fujii_wilson_plus_constant(const StepWeight& w, const RefinementGrid& grid);
ConstantReport khrushchev_constant(const StepWeight& w, const RefinementGrid& grid);
ConstantReport gurov_reshetnyak(const StepWeight& w, const RefinementGrid& grid);

/// (1/w(J)) * integral over J of op(w 1_J); op is M or Mminus.
Real fujii_wilson_functional(const StepWeight& w, const Interval& j, Operator op = Operator::M);
/// (1/w(J)) * integral over J of |w - w_J|, exact.
Rational gurov_reshetnyak_functional(const StepWeight& w, const Interval& j);

}  // namespace rhilab
