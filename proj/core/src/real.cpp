#include "rhilab/real.hpp"

#include <atomic>
#include <cmath>

#include "rhilab/errors.hpp"

namespace rhilab {

namespace {
std::atomic<double> g_relative{1e-9};
}  // namespace

TolerancePolicy tolerance() { return TolerancePolicy{g_relative.load()}; }

void set_tolerance(TolerancePolicy policy) {
  if (!(policy.relative >= 0.0L)) throw DomainError("tolerance must be nonnegative");
  g_relative.store(static_cast<double>(policy.relative));
}

bool within_tolerance(long double lhs, long double rhs, long double relative) {
  return lhs <= rhs * (1.0L + relative);
}

bool within_tolerance(const Real& lhs, const Real& rhs) {
  if (lhs.is_exact() && rhs.is_exact()) return *lhs.exact <= *rhs.exact;
  return within_tolerance(lhs.value, rhs.value, g_relative.load());
}

}  // namespace rhilab
