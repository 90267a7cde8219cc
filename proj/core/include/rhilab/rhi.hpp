#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rhilab/constants.hpp"
#include "rhilab/report.hpp"
#include "rhilab/step_weight.hpp"

namespace rhilab {

/// Open upper bound for r: delta/(delta-1) in one dimension, 1 + 1/(2^n (delta-1))
/// for the dimensional forms, +inf at delta = 1.
long double admissible_range(long double delta, TheoremId id, int n = 1);

/// The multiplicative constant of the inequality; continuous at r = 1.
long double sharp_constant(long double r, long double delta, TheoremId id, int n = 1);

/// c_n(delta) = delta + (2^n - 1)(delta - 1).
Rational superlevel_constant(const Rational& delta, int n);

struct VerifyParams {
  std::optional<long double> r;
  std::optional<Interval> interval;
  std::optional<std::array<Rational, 3>> triple;
  std::vector<Interval> set;           // E for the embedding forms
  std::optional<Rational> lambda0;     // level for the layer-cake lemma
  std::optional<long double> delta;    // overrides the computed constant where allowed
  int depth = kDefaultDepth;
  bool escalate = true;
};

/// The constant `verify` uses for `id` when none is given (before escalation).
long double theorem_delta(TheoremId id, const StepWeight& w, int depth = kDefaultDepth);

/// Evaluates both sides of the inequality `id` on w. Dyadic and product-measure
/// forms live in dyadic.hpp / mugrid.hpp.
Verdict verify(TheoremId id, const StepWeight& w, const VerifyParams& params);

Verdict verify_rearrangement_lemma(const StepWeight& w, const Interval& i, int depth = kDefaultDepth,
                                   bool escalate = true);
Verdict verify_wik_bound(const StepWeight& w, const Interval& i, long double delta);
enum class EmbeddingForm { I, II };
Verdict verify_embedding(const StepWeight& w, const Interval& i, const std::vector<Interval>& e, EmbeddingForm which,
                         int depth = kDefaultDepth);
Verdict verify_extremizer_equality(long double tau, long double r);

struct HypothesisCheck {
  bool holds = true;
  Rational worst_lambda;
  Rational worst_ratio;  // max of v(E)/(lambda |E|); 0 when every tested E is empty
};

/// Checks v(E_lambda) <= delta lambda |E_lambda| for all lambda >= lambda0 (v = w on I).
HypothesisCheck check_superlevel_hypothesis(const StepWeight& w, const Interval& i, const Rational& lambda0,
                                            long double delta);

/// Weak L^{r,infty}(I, dx/|I|) norm of a profile (numerical sup over levels).
long double profile_weak_norm(const MaximalProfile& p, long double r);

}  // namespace rhilab
