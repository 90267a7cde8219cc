#pragma once

#include <string_view>
#include <vector>

#include "rhilab/geometry.hpp"
#include "rhilab/rational.hpp"
#include "rhilab/real.hpp"
#include "rhilab/step_weight.hpp"

namespace rhilab {

enum class Operator { M, Mplus, Mminus, Mminus2 };

std::string_view to_string(Operator op);
Operator parse_operator(std::string_view text);

/// Constant c, or x -> (alpha - v x)/(q - x).
struct Form {
  enum class Kind { Const, Moebius };
  Kind kind = Kind::Const;
  Rational alpha;
  Rational v;
  Rational q;

  static Form constant(Rational c) { return Form{Kind::Const, std::move(c), Rational(0), Rational(0)}; }
  static Form moebius(Rational alpha, Rational v, Rational q) {
    return Form{Kind::Moebius, std::move(alpha), std::move(v), std::move(q)};
  }

  Rational at(const Rational& x) const;
  long double at(long double x) const;

  friend bool operator==(const Form&, const Form&) = default;
};

struct Segment {
  Interval interval;
  Form form;
};

/// Piecewise (constant / Moebius) representation of a maximal function of w 1_I.
///
/// The domain may be larger than the source interval I (the weight is then zero
/// on domain \ I). Values at segment boundaries are the smaller one-sided limit,
/// which is the true value for M, M+ and M-.
class MaximalProfile {
 public:
  MaximalProfile(Operator op, Interval source, Interval domain, std::vector<Segment> segments);

  Operator op() const { return op_; }
  const Interval& source() const { return source_; }
  const Interval& domain() const { return domain_; }
  const std::vector<Segment>& segments() const { return segments_; }

  Rational operator()(const Rational& x) const;
  long double operator()(long double x) const;
  Rational left_limit(const Rational& x) const;
  Rational right_limit(const Rational& x) const;
  /// Supremum over the domain.
  Rational sup() const;

 private:
  std::size_t locate(const Rational& x) const;

  Operator op_;
  Interval source_;
  Interval domain_;
  std::vector<Segment> segments_;
};

struct Component {
  Interval interval;
  bool touches_left = false;   // reaches the left end of the source interval
  bool touches_right = false;  // reaches the right end of the source interval
  bool interior = false;       // strictly inside the source interval
};

struct LevelSetDecomposition {
  Rational lambda;
  std::vector<Component> components;

  /// Total length of the components intersected with J.
  Rational measure_within(const Interval& j) const;
};

/// Exact value at x in the closure of I. At the ends of I one-sided operators
/// return the limit from inside I.
Rational eval_maximal(const StepWeight& w, const Interval& i, Operator op, const Rational& x);

/// Lower bound for the localized second iteration of M- at x, from candidate
/// left endpoints refined dyadically to `depth`. exact is set only when w is
/// constant on (I.lo, x).
Real eval_mminus2(const StepWeight& w, const Interval& i, const Rational& x, int depth = 6);

MaximalProfile maximal_profile(const StepWeight& w, const Interval& i, Operator op);
/// Profile of the operator applied to w 1_I, over the larger domain `ambient`.
MaximalProfile maximal_profile(const StepWeight& w, const Interval& i, Operator op, const Interval& ambient);

/// Closed-form integral over J (J inside the domain).
Real integrate_profile(const MaximalProfile& p, const Interval& j);
/// Integral of p^r over J by adaptive Gauss-Legendre quadrature, absolute error ~ abs_tol.
Real integrate_profile_power(const MaximalProfile& p, const Interval& j, long double r,
                             long double abs_tol = 0.0L);

LevelSetDecomposition superlevel_set(const MaximalProfile& p, const Rational& lambda);

/// Measure of {x in source : p(x) > lambda}.
Rational profile_distribution(const MaximalProfile& p, const Rational& lambda);

struct MassIdentity {
  Interval component;
  Rational mass;           // w((a,b) ∩ I)
  Rational lambda_length;  // lambda |(a,b)|
  bool holds = false;
  bool certified = false;  // in scope of the identity (does not touch the right end of I)
};

struct RisingSunMinus {
  LevelSetDecomposition level;
  std::vector<MassIdentity> identities;
  /// All in-scope identities hold.
  bool certified = true;
};

RisingSunMinus rising_sun_minus(const StepWeight& w, const Interval& i, const Rational& lambda);

struct RisingSunTwoSided {
  LevelSetDecomposition level;
  bool maximality = true;          // every breakpoint interval with average > lambda sits in one component
  bool endpoint_averages = true;   // averages from each component end are <= lambda
  bool localization = true;        // M of the restriction agrees with M on each component
};

RisingSunTwoSided rising_sun_two_sided(const StepWeight& w, const Rational& lambda);

/// Decreasing rearrangement of w on I, as a step weight on (0, |I|) with equal values merged.
StepWeight rearrangement(const StepWeight& w, const Interval& i);

/// |I|^{-1/r} sup_lambda lambda |{x in I : w > lambda}|^{1/r}.
Real weak_lorentz_norm(const StepWeight& w, const Interval& i, long double r);

}  // namespace rhilab
