#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rhilab/report.hpp"
#include "rhilab/step_weight.hpp"

namespace rhilab {

/// w(x) = x^{tau-1} on (0, 1), 0 < tau < 1.
class PowerWeight {
 public:
  explicit PowerWeight(long double tau);

  long double tau() const { return tau_; }
  long double mass(long double t) const;              // integral over (0, t)
  long double mminus(long double x) const;            // M-(w 1_(0,1))(x)
  long double mminus2(long double x) const;           // second iteration at x
  long double a1_plus() const { return 1.0L / tau_; }
  long double avg_power(long double r) const;         // integral over (0,1) of (M- w)^r
  long double avg_weight_power(long double r) const;  // integral over (0,1) of w^r

 private:
  long double tau_;
};

enum class OracleQuery { Mass, Mminus, Mminus2, A1plus, AvgPower };

/// Closed forms: mass(t) = t^tau/tau, Mminus(x) = x^{tau-1}/tau, Mminus2(x) = x^{tau-1}/tau^2,
/// A1plus = 1/tau, AvgPower(r) = tau^{-r}/((tau-1) r + 1). Throws DomainError when the
/// power integral diverges.
long double power_oracle(long double tau, OracleQuery query, long double arg = 0.0L);

/// m equal pieces on (0,1) carrying the cell averages of w_tau, rounded to `bits` significant bits.
StepWeight step_discretize(long double tau, int m, int bits = 64);
/// Pieces (q^{k+1}, q^k), k < m, plus a first piece (0, q^m); cell averages of w_tau.
StepWeight graded_discretize(long double tau, int m, long double q, int bits = 64);

enum class SearchVariant { T3_1_FIRST, T3_1_SECOND, BSW, T1_3 };
std::string_view to_string(SearchVariant v);
SearchVariant parse_variant(std::string_view text);

struct SearchConfig {
  SearchVariant variant = SearchVariant::T3_1_FIRST;
  long double delta = 2.0L;
  long double r = 1.5L;
  int pieces = 64;
  long long budget = 10000;
  std::uint64_t seed = 1;
};

struct TraceEntry {
  long long evaluation;
  long double ratio;
};

struct SearchResult {
  long double best_ratio = 0.0L;
  StepWeight witness = StepWeight::constant(Interval(Rational(0), Rational(1)), Rational(1));
  long double witness_constant = 1.0L;  // exact constant of the witness, as long double
  long long evaluations = 0;
  std::vector<TraceEntry> trace;         // every improvement
  std::uint64_t trace_hash = 0;
};

/// Seeded derivative-free maximization of lhs/rhs over m-piece weights whose
/// constant stays <= delta.
SearchResult sharpness_search(const SearchConfig& cfg);

/// Ratio lhs/rhs of the variant on a weight with its constant replaced by delta.
long double variant_ratio(SearchVariant v, const StepWeight& w, long double delta, long double r);

}  // namespace rhilab
