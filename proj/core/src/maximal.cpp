#include "rhilab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <boost/math/quadrature/gauss.hpp>

#include "rhilab/detail/envelope.hpp"
#include "rhilab/errors.hpp"

namespace rhilab {

using detail::Fn;
using detail::Seg;
using detail::Steps;

std::string_view to_string(Operator op) {
  switch (op) {
    case Operator::M: return "M";
    case Operator::Mplus: return "Mplus";
    case Operator::Mminus: return "Mminus";
    case Operator::Mminus2: return "Mminus2";
  }
  return "?";
}

Operator parse_operator(std::string_view text) {
  if (text == "M" || text == "m") return Operator::M;
  if (text == "Mplus" || text == "mplus" || text == "M+") return Operator::Mplus;
  if (text == "Mminus" || text == "mminus" || text == "M-") return Operator::Mminus;
  if (text == "Mminus2" || text == "mminus2" || text == "M-2") return Operator::Mminus2;
  throw ParseError("unknown operator '" + std::string(text) + "' (expected M, Mplus, Mminus, Mminus2)");
}

Rational Form::at(const Rational& x) const {
  if (kind == Kind::Const) return alpha;
  return (alpha - v * x) / (q - x);
}

long double Form::at(long double x) const {
  if (kind == Kind::Const) return alpha.to_long_double();
  return (alpha.to_long_double() - v.to_long_double() * x) / (q.to_long_double() - x);
}

MaximalProfile::MaximalProfile(Operator op, Interval source, Interval domain, std::vector<Segment> segments)
    : op_(op), source_(std::move(source)), domain_(std::move(domain)), segments_(std::move(segments)) {
  if (segments_.empty()) throw ConsistencyError("profile without segments");
  if (segments_.front().interval.lo() != domain_.lo() || segments_.back().interval.hi() != domain_.hi())
    throw ConsistencyError("profile segments do not cover the domain");
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const auto& s = segments_[k];
    if (k > 0 && segments_[k - 1].interval.hi() != s.interval.lo())
      throw ConsistencyError("profile segments are not contiguous");
    if (s.form.kind == Form::Kind::Moebius && s.interval.contains_closed(s.form.q))
      throw ConsistencyError("Moebius segment has its pole inside (" + s.interval.lo().str() + ", " +
                             s.interval.hi().str() + ")");
  }
}

std::size_t MaximalProfile::locate(const Rational& x) const {
  if (!domain_.contains_closed(x))
    throw DomainError("point " + x.str() + " is outside the profile domain");
  auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                             [](const Segment& s, const Rational& v) { return s.interval.hi() < v; });
  return static_cast<std::size_t>(it - segments_.begin());
}

Rational MaximalProfile::left_limit(const Rational& x) const {
  const std::size_t k = locate(x);
  if (x == domain_.lo()) return segments_.front().form.at(x);
  return segments_[k].form.at(x);
}

Rational MaximalProfile::right_limit(const Rational& x) const {
  std::size_t k = locate(x);
  if (x == segments_[k].interval.hi() && k + 1 < segments_.size()) ++k;
  return segments_[k].form.at(x);
}

Rational MaximalProfile::operator()(const Rational& x) const {
  return min(left_limit(x), right_limit(x));
}

long double MaximalProfile::operator()(long double x) const {
  auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                             [](const Segment& s, long double v) { return s.interval.hi().to_long_double() < v; });
  if (it == segments_.end()) --it;
  return it->form.at(x);
}

Rational MaximalProfile::sup() const {
  Rational best(0);
  for (const auto& s : segments_) {
    best = max(best, s.form.at(s.interval.lo()));
    best = max(best, s.form.at(s.interval.hi()));
  }
  return best;
}

Rational LevelSetDecomposition::measure_within(const Interval& j) const {
  Rational total(0);
  for (const auto& c : components) {
    const Rational lo = max(c.interval.lo(), j.lo()), hi = min(c.interval.hi(), j.hi());
    if (lo < hi) total += hi - lo;
  }
  return total;
}

namespace {

void check_inside(const StepWeight& w, const Interval& i) {
  if (!w.support().contains(i))
    throw DomainError("interval (" + i.lo().str() + ", " + i.hi().str() + ") is not inside the weight support");
}

Rational minus_value(const StepWeight& r, const Rational& x) {
  const auto bp = r.breakpoints();
  if (x <= bp.front()) return r.values().front();
  const Rational wx = r.cumulative(x);
  Rational best(0);
  for (std::size_t k = 0; k < bp.size() && bp[k] < x; ++k)
    best = max(best, (wx - r.cumulative_at(k)) / (x - bp[k]));
  return best;
}

Rational plus_value(const StepWeight& r, const Rational& x) {
  const auto bp = r.breakpoints();
  if (x >= bp.back()) return r.values().back();
  const Rational wx = r.cumulative(x);
  Rational best(0);
  for (std::size_t k = bp.size(); k-- > 0 && bp[k] > x;)
    best = max(best, (r.cumulative_at(k) - wx) / (bp[k] - x));
  return best;
}

detail::Side side_of(Operator op) {
  switch (op) {
    case Operator::M: return detail::Side::Both;
    case Operator::Mplus: return detail::Side::Plus;
    case Operator::Mminus: return detail::Side::Minus;
    case Operator::Mminus2: break;
  }
  throw DomainError("the second iteration of M- has no exact profile; use eval_mminus2");
}

Form to_form(const Fn<Rational>& f) {
  return f.is_const ? Form::constant(f.a) : Form::moebius(f.a, f.v, f.q);
}

long double integrate_seg(const Seg<long double>& s) {
  if (s.fn.is_const) return s.fn.a * (s.hi - s.lo);
  const long double c = s.fn.a - s.fn.v * s.fn.q;
  return s.fn.v * (s.hi - s.lo) + c * std::log(std::fabs(s.fn.q - s.lo) / std::fabs(s.fn.q - s.hi));
}

// Cumulative mass of a padded exact step function at an arbitrary point.
Rational cumulative(const Steps<Rational>& s, const Rational& x) {
  if (x <= s.x.front()) return Rational(0);
  if (x >= s.x.back()) return s.W.back();
  auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - s.x.begin()) - 1;
  return s.W[k] + s.v[k] * (x - s.x[k]);
}

Rational value_right_of(const Steps<Rational>& s, const Rational& x) {
  if (x < s.x.front() || x >= s.x.back()) return Rational(0);
  auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
  return s.v[static_cast<std::size_t>(it - s.x.begin()) - 1];
}

Rational value_left_of(const Steps<Rational>& s, const Rational& x) {
  if (x <= s.x.front() || x > s.x.back()) return Rational(0);
  auto it = std::lower_bound(s.x.begin(), s.x.end(), x);
  return s.v[static_cast<std::size_t>(it - s.x.begin()) - 1];
}

}  // namespace

Rational eval_maximal(const StepWeight& w, const Interval& i, Operator op, const Rational& x) {
  check_inside(w, i);
  if (!i.contains_closed(x))
    throw DomainError("point " + x.str() + " is outside [" + i.lo().str() + ", " + i.hi().str() + "]");
  const StepWeight r = restrict(w, i);
  switch (op) {
    case Operator::Mminus: return minus_value(r, x);
    case Operator::Mplus: return plus_value(r, x);
    case Operator::M: return max(minus_value(r, x), plus_value(r, x));
    case Operator::Mminus2: break;
  }
  throw DomainError("the second iteration of M- is not exactly computable; use eval_mminus2");
}

MaximalProfile maximal_profile(const StepWeight& w, const Interval& i, Operator op) {
  return maximal_profile(w, i, op, i);
}

MaximalProfile maximal_profile(const StepWeight& w, const Interval& i, Operator op, const Interval& ambient) {
  check_inside(w, i);
  if (!ambient.contains(i)) throw DomainError("ambient domain must contain the source interval");
  auto steps = Steps<Rational>::from(restrict(w, i));
  steps.pad(ambient.lo(), ambient.hi());
  auto segs = detail::profile(steps, side_of(op));
  std::vector<Segment> out;
  out.reserve(segs.size());
  for (auto& s : segs) out.push_back(Segment{Interval(s.lo, s.hi), to_form(s.fn)});
  return MaximalProfile(op, i, ambient, std::move(out));
}

Real eval_mminus2(const StepWeight& w, const Interval& i, const Rational& x, int depth) {
  check_inside(w, i);
  if (!i.contains_closed(x))
    throw DomainError("point " + x.str() + " is outside [" + i.lo().str() + ", " + i.hi().str() + "]");
  if (depth < 0) throw DomainError("refinement depth must be nonnegative");
  if (x == i.lo()) return Real::from(restrict(w, i).values().front());
  const StepWeight left = restrict(w, Interval(i.lo(), x));
  if (left.is_constant()) return Real::from(left.values().front());

  std::vector<Rational> starts;
  const auto bp = left.breakpoints();
  const Rational parts(1LL << depth);
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const Rational step = (bp[k + 1] - bp[k]) / parts;
    for (long long j = 0; j < (1LL << depth); ++j) starts.push_back(bp[k] + step * Rational(j));
  }
  long double best = left.values().back().to_long_double();  // limit as the interval shrinks to x
  const long double xe = x.to_long_double();
  for (const auto& a : starts) {
    const StepWeight piece = restrict(left, Interval(a, x));
    const auto steps = Steps<long double>::from(piece);
    long double integral = 0.0L;
    for (const auto& s : detail::profile(steps, detail::Side::Minus)) integral += integrate_seg(s);
    best = std::max(best, integral / (xe - a.to_long_double()));
  }
  return Real::approx(best);
}

Real integrate_profile(const MaximalProfile& p, const Interval& j) {
  if (!p.domain().contains(j)) throw DomainError("integration interval is outside the profile domain");
  Rational exact_part(0);
  long double log_part = 0.0L;
  bool exact = true;
  for (const auto& s : p.segments()) {
    const Rational lo = max(s.interval.lo(), j.lo()), hi = min(s.interval.hi(), j.hi());
    if (!(lo < hi)) continue;
    if (s.form.kind == Form::Kind::Const) {
      exact_part += s.form.alpha * (hi - lo);
      continue;
    }
    if (Interval(lo, hi).contains_closed(s.form.q)) throw ConsistencyError("pole inside integration range");
    const Rational c = s.form.alpha - s.form.v * s.form.q;
    exact_part += s.form.v * (hi - lo);
    if (c.is_zero()) continue;
    const Rational near = (s.form.q - lo).abs(), far = (s.form.q - hi).abs();
    // log(near/far) = log1p((near - far)/far) keeps precision for short segments
    log_part += c.to_long_double() * std::log1p(((near - far) / far).to_long_double());
    exact = false;
  }
  if (exact) return Real::from(exact_part);
  return Real::approx(exact_part.to_long_double() + log_part);
}

namespace {

long double adaptive_gl(const std::function<long double(long double)>& f, long double a, long double b,
                        long double whole, long double tol, int depth) {
  using GL = boost::math::quadrature::gauss<long double, 16>;
  const long double mid = a + (b - a) / 2;
  const long double left = GL::integrate(f, a, mid), right = GL::integrate(f, mid, b);
  if (std::fabs(left + right - whole) <= tol || depth >= 40) return left + right;
  return adaptive_gl(f, a, mid, left, tol / 2, depth + 1) + adaptive_gl(f, mid, b, right, tol / 2, depth + 1);
}

}  // namespace

Real integrate_profile_power(const MaximalProfile& p, const Interval& j, long double r, long double abs_tol) {
  if (!p.domain().contains(j)) throw DomainError("integration interval is outside the profile domain");
  const bool int_power = std::nearbyint(r) == r && std::fabs(r) <= 64.0L;
  Rational exact_part(0);
  long double approx_part = 0.0L;
  bool exact = true;
  for (const auto& s : p.segments()) {
    const Rational lo = max(s.interval.lo(), j.lo()), hi = min(s.interval.hi(), j.hi());
    if (!(lo < hi)) continue;
    if (s.form.kind == Form::Kind::Const) {
      if (int_power) {
        exact_part += s.form.alpha.pow(static_cast<int>(r)) * (hi - lo);
      } else {
        approx_part += std::pow(s.form.alpha.to_long_double(), r) * (hi - lo).to_long_double();
        exact = false;
      }
      continue;
    }
    exact = false;
    const Form& form = s.form;
    auto f = [&form, r](long double x) { return std::pow(form.at(x), r); };
    const long double a = lo.to_long_double(), b = hi.to_long_double();
    using GL = boost::math::quadrature::gauss<long double, 16>;
    const long double whole = GL::integrate(f, a, b);
    const long double tol = std::max(abs_tol, std::fabs(whole) * 1e-15L);
    approx_part += adaptive_gl(f, a, b, whole, tol, 0);
  }
  if (exact) return Real::from(exact_part);
  return Real::approx(exact_part.to_long_double() + approx_part);
}

LevelSetDecomposition superlevel_set(const MaximalProfile& p, const Rational& lambda) {
  if (lambda.sign() <= 0) throw DomainError("level must be positive");
  std::vector<std::pair<Rational, Rational>> parts;
  for (const auto& s : p.segments()) {
    const Rational& a = s.interval.lo();
    const Rational& b = s.interval.hi();
    const bool in_a = s.form.at(a) > lambda, in_b = s.form.at(b) > lambda;
    if (!in_a && !in_b) continue;
    if (in_a && in_b) {
      parts.emplace_back(a, b);
      continue;
    }
    // monotone Moebius segment crossing the level once
    const Rational t = (s.form.alpha - lambda * s.form.q) / (s.form.v - lambda);
    if (in_a)
      parts.emplace_back(a, t);
    else
      parts.emplace_back(t, b);
  }
  LevelSetDecomposition out{lambda, {}};
  std::vector<std::pair<Rational, Rational>> merged;
  for (auto& part : parts) {
    if (!merged.empty() && merged.back().second == part.first && p(part.first) > lambda)
      merged.back().second = part.second;
    else
      merged.push_back(part);
  }
  for (auto& [lo, hi] : merged) {
    Component c{Interval(lo, hi)};
    c.touches_left = lo <= p.source().lo();
    c.touches_right = hi >= p.source().hi();
    c.interior = !c.touches_left && !c.touches_right;
    out.components.push_back(std::move(c));
  }
  return out;
}

Rational profile_distribution(const MaximalProfile& p, const Rational& lambda) {
  return superlevel_set(p, lambda).measure_within(p.source());
}

RisingSunMinus rising_sun_minus(const StepWeight& w, const Interval& i, const Rational& lambda) {
  check_inside(w, i);
  if (lambda.sign() <= 0) throw DomainError("level must be positive");
  const Rational mass = w.mass(i);
  const Interval ambient(i.lo(), i.hi() + mass / lambda);
  const auto p = maximal_profile(w, i, Operator::Mminus, ambient);
  RisingSunMinus out{superlevel_set(p, lambda), {}, true};
  for (const auto& c : out.level.components) {
    const Rational lo = max(c.interval.lo(), i.lo()), hi = min(c.interval.hi(), i.hi());
    MassIdentity id{c.interval, lo < hi ? w.mass(Interval(lo, hi)) : Rational(0),
                    lambda * c.interval.length()};
    id.holds = id.mass == id.lambda_length;
    id.certified = !c.touches_right;
    if (id.certified && !id.holds) out.certified = false;
    out.identities.push_back(std::move(id));
  }
  return out;
}

RisingSunTwoSided rising_sun_two_sided(const StepWeight& w, const Rational& lambda) {
  if (lambda.sign() <= 0) throw DomainError("level must be positive");
  const Interval i = w.support();
  const Rational reach = w.total_mass() / lambda;
  const Interval ambient(i.lo() - reach, i.hi() + reach);
  const auto p = maximal_profile(w, i, Operator::M, ambient);
  RisingSunTwoSided out{superlevel_set(p, lambda)};
  const auto& comps = out.level.components;

  const auto bp = w.breakpoints();
  for (std::size_t a = 0; a < bp.size() && out.maximality; ++a)
    for (std::size_t b = a + 1; b < bp.size(); ++b) {
      if (!((w.cumulative_at(b) - w.cumulative_at(a)) > lambda * (bp[b] - bp[a]))) continue;
      const bool inside = std::any_of(comps.begin(), comps.end(), [&](const Component& c) {
        return c.interval.lo() <= bp[a] && bp[b] <= c.interval.hi();
      });
      if (!inside) {
        out.maximality = false;
        break;
      }
    }

  auto steps = Steps<Rational>::from(w);
  steps.pad(ambient.lo(), ambient.hi());
  for (const auto& c : comps) {
    const Rational& a = c.interval.lo();
    const Rational& b = c.interval.hi();
    const Rational wa = cumulative(steps, a), wb = cumulative(steps, b);
    if (value_right_of(steps, a) > lambda || value_left_of(steps, b) > lambda) out.endpoint_averages = false;
    std::vector<Rational> inner;
    for (const auto& x : steps.x)
      if (a < x && x < b) inner.push_back(x);
    inner.push_back(b);
    for (const auto& x : inner)
      if (cumulative(steps, x) - wa > lambda * (x - a)) out.endpoint_averages = false;
    inner.back() = a;
    for (const auto& x : inner)
      if (wb - cumulative(steps, x) > lambda * (b - x)) out.endpoint_averages = false;

    const Rational lo = max(a, i.lo()), hi = min(b, i.hi());
    const auto local = maximal_profile(restrict(w, Interval(lo, hi)), Interval(lo, hi), Operator::M, c.interval);
    std::vector<Rational> probes;
    for (const auto* prof : {&local, &p})
      for (const auto& s : prof->segments()) {
        if (c.interval.contains(s.interval.lo())) probes.push_back(s.interval.lo());
        const Rational mid = midpoint(s.interval.lo(), s.interval.hi());
        if (c.interval.contains(mid)) probes.push_back(mid);
      }
    for (const auto& x : probes)
      if (local(x) != p(x)) out.localization = false;
  }
  return out;
}

StepWeight rearrangement(const StepWeight& w, const Interval& i) {
  const StepWeight r = restrict(w, i);
  std::map<Rational, Rational, std::greater<>> by_value;
  for (std::size_t k = 0; k < r.pieces(); ++k) by_value[r.values()[k]] += r.piece(k).length();
  std::vector<Rational> xs{Rational(0)}, vs;
  for (const auto& [v, len] : by_value) {
    vs.push_back(v);
    xs.push_back(xs.back() + len);
  }
  return StepWeight(std::move(xs), std::move(vs));
}

Real weak_lorentz_norm(const StepWeight& w, const Interval& i, long double r) {
  if (!(r > 1.0L)) throw DomainError("weak Lorentz exponent must exceed 1");
  const StepWeight star = rearrangement(w, i);
  const Rational total = i.length();
  long double best = 0.0L;
  for (std::size_t k = 0; k < star.pieces(); ++k) {
    // lambda -> value from below: |{w > lambda}| -> measure of {w >= value}
    const long double frac = (star.breakpoints()[k + 1] / total).to_long_double();
    best = std::max(best, star.values()[k].to_long_double() * std::pow(frac, 1.0L / r));
  }
  if (star.pieces() == 1) return Real::from(star.values()[0]);
  return Real::approx(best);
}

}  // namespace rhilab
