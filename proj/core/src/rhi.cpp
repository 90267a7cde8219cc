#include "rhilab/rhi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "rhilab/errors.hpp"
#include "rhilab/extremal.hpp"
#include "rhilab/maximal.hpp"

namespace rhilab {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();

bool dimensional(TheoremId id) {
  return id == TheoremId::T1_1 || id == TheoremId::T4_2 || id == TheoremId::COR4_3;
}

std::string fmt(long double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void check_r(long double r, long double delta, TheoremId id, int n) {
  const long double bound = admissible_range(delta, id, n);
  if (!(r >= 1.0L) || !(r < bound))
    throw RangeError("r = " + fmt(r) + " is outside [1, " + fmt(bound) + ") for " + std::string(to_string(id)) +
                     " with delta = " + fmt(delta));
}

struct Delta {
  long double value = 1.0L;
  std::optional<Rational> exact;
  std::string source;
  int depth = 0;
};

Delta exact_delta(const ConstantReport& rep) {
  Delta d;
  d.value = rep.value.value;
  d.exact = rep.value.exact;
  d.source = "exact";
  return d;
}

Delta grid_delta(const ConstantReport& rep, int depth) {
  Delta d;
  d.value = rep.value.value;
  d.exact = rep.value.exact;
  d.depth = depth;
  d.source = rep.is_lower_bound ? "grid lower bound depth " + std::to_string(depth) : "exact";
  return d;
}

enum class Source { A1, A1plus, FW, FWplus, Given };

Source delta_source(TheoremId id) {
  switch (id) {
    case TheoremId::T1_3:
    case TheoremId::BSW:
    case TheoremId::WIK_BOUND:
    case TheoremId::EMB_COR_I:
      return Source::A1;
    case TheoremId::T3_1_FIRST:
    case TheoremId::T3_1_SECOND:
    case TheoremId::T_ONESIDED_ENDPOINT_A1:
      return Source::A1plus;
    case TheoremId::T3_3:
    case TheoremId::T3_3_COR_FIRST:
    case TheoremId::T3_3_COR_SECOND:
    case TheoremId::T_ONESIDED_ENDPOINT_AINFTY:
      return Source::FWplus;
    case TheoremId::L2_2:
      return Source::Given;
    default:
      return Source::FW;
  }
}

Delta compute_delta(Source s, const StepWeight& w, int depth) {
  switch (s) {
    case Source::A1:
      return exact_delta(a1_constant(w));
    case Source::A1plus:
      return exact_delta(a1_plus_constant(w));
    case Source::FW:
      return grid_delta(fujii_wilson_constant(w, RefinementGrid::for_weight(w, depth)), depth);
    case Source::FWplus:
      return grid_delta(fujii_wilson_plus_constant(w, RefinementGrid::for_weight(w, depth)), depth);
    case Source::Given:
      break;
  }
  return {};
}

long double ld(const Rational& q) { return q.to_long_double(); }

VerdictParams base_params(long double r, const Delta& d) {
  VerdictParams p;
  p.r = r;
  p.delta = d.value;
  p.delta_exact = d.exact;
  if (d.depth > 0) p.depth = d.depth;
  return p;
}

Real times(long double c, const Real& x) {
  if (c == 1.0L) return x;
  return Real::approx(c * x.value);
}

// Both sides at r = 1 collapse onto exact quantities when the constant is 1.
Real power_of(const Rational& base, long double r) {
  if (r == 1.0L) return Real::from(base);
  if (r == 0.0L) return Real::from(Rational(1));
  return Real::approx(std::pow(ld(base), r));
}

Real power_of(const Real& base, long double r) {
  if (base.exact) return power_of(*base.exact, r);
  if (r == 1.0L) return base;
  return Real::approx(std::pow(base.value, r));
}

Real product(const Real& a, const Real& b) {
  if (a.exact && b.exact) return Real::from(*a.exact * *b.exact);
  return Real::approx(a.value * b.value);
}

Real divide(const Real& a, const Rational& b) {
  if (a.exact) return Real::from(*a.exact / b);
  return Real::approx(a.value / ld(b));
}

// Profile value sup over the source interval.
Rational profile_sup_on_source(const MaximalProfile& p) {
  Rational best(0);
  for (const auto& s : p.segments()) {
    const Rational lo = max(s.interval.lo(), p.source().lo()), hi = min(s.interval.hi(), p.source().hi());
    if (!(lo < hi)) continue;
    best = max(best, max(s.form.at(lo), s.form.at(hi)));
  }
  return best;
}

// Minimum of the profile over the closure of J.
Rational profile_min_on(const MaximalProfile& p, const Interval& j) {
  std::optional<Rational> best;
  for (const auto& s : p.segments()) {
    const Rational lo = max(s.interval.lo(), j.lo()), hi = min(s.interval.hi(), j.hi());
    if (!(lo < hi)) continue;
    const Rational m = min(s.form.at(lo), s.form.at(hi));
    if (!best || m < *best) best = m;
  }
  return best.value_or(Rational(0));
}

// Integral of the profile over a union of disjoint intervals.
Real integrate_union(const MaximalProfile& p, const std::vector<Interval>& parts) {
  Rational exact(0);
  long double approx = 0.0L;
  bool is_exact = true;
  for (const auto& j : parts) {
    const Real v = integrate_profile(p, j);
    if (v.exact)
      exact += *v.exact;
    else
      is_exact = false;
    approx += v.value;
  }
  if (is_exact) return Real::from(exact);
  return Real::approx(approx);
}

std::vector<Rational> critical_levels(const MaximalProfile& p) {
  std::set<Rational> levels;
  for (const auto& s : p.segments()) {
    const Rational lo = max(s.interval.lo(), p.source().lo()), hi = min(s.interval.hi(), p.source().hi());
    if (!(lo < hi)) continue;
    levels.insert(s.form.at(lo));
    levels.insert(s.form.at(hi));
  }
  return {levels.begin(), levels.end()};
}

// Levels used to sample superlevel sets: critical values, 64 evenly spaced
// interior values and one level below the minimum.
std::vector<Rational> sample_levels(const MaximalProfile& p) {
  std::vector<Rational> levels = critical_levels(p);
  const Rational lo = levels.front(), hi = levels.back();
  std::set<Rational> all(levels.begin(), levels.end());
  for (int k = 1; k <= 64; ++k) all.insert(lo + (hi - lo) * Rational(k, 65));
  all.insert(lo / Rational(2));
  all.erase(hi);
  return {all.begin(), all.end()};
}

std::vector<Interval> component_intervals(const LevelSetDecomposition& d, const Interval& clip) {
  std::vector<Interval> out;
  for (const auto& c : d.components) {
    const Rational lo = max(c.interval.lo(), clip.lo()), hi = min(c.interval.hi(), clip.hi());
    if (lo < hi) out.emplace_back(lo, hi);
  }
  return out;
}

Rational total_length(const std::vector<Interval>& parts) {
  Rational t(0);
  for (const auto& j : parts) t += j.length();
  return t;
}

// Measure of {p > lambda} (or >= when `closed`) inside the source, in long double.
long double distribution_ld(const MaximalProfile& p, long double lambda, bool closed) {
  long double total = 0.0L;
  auto above = [&](long double v) { return closed ? v >= lambda : v > lambda; };
  for (const auto& s : p.segments()) {
    const Rational lo_q = max(s.interval.lo(), p.source().lo()), hi_q = min(s.interval.hi(), p.source().hi());
    if (!(lo_q < hi_q)) continue;
    const long double a = ld(lo_q), b = ld(hi_q);
    if (s.form.kind == Form::Kind::Const) {
      if (above(ld(s.form.alpha))) total += b - a;
      continue;
    }
    const long double fa = s.form.at(a), fb = s.form.at(b);
    const bool ia = above(fa), ib = above(fb);
    if (ia && ib) {
      total += b - a;
    } else if (ia || ib) {
      const long double alpha = ld(s.form.alpha), v = ld(s.form.v), q = ld(s.form.q);
      const long double x = std::clamp((alpha - lambda * q) / (v - lambda), a, b);
      total += ia ? x - a : b - x;
    }
  }
  return total;
}

Real mminus_at(const StepWeight& w, const Interval& i, const Rational& x) {
  return Real::from(eval_maximal(w, i, Operator::Mminus, x));
}

Verdict fail_safe_escalate(TheoremId id, const StepWeight& w, const VerifyParams& params,
                           const std::function<Verdict(const Delta&)>& eval) {
  const Source src = delta_source(id);
  if (params.delta) {
    Delta d;
    d.value = *params.delta;
    d.source = "given";
    return eval(d);
  }
  int depth = params.depth;
  Verdict v = eval(compute_delta(src, w, depth));
  const bool grid = src == Source::FW || src == Source::FWplus;
  while (grid && params.escalate && !v.holds && depth < kMaxEscalationDepth) {
    depth = std::min(kMaxEscalationDepth, depth + 2);
    const Delta d = compute_delta(src, w, depth);
    try {
      v = eval(d);
    } catch (const RangeError&) {
      break;  // finer delta shrinks the range below r; keep the last verdict
    }
  }
  return v;
}

Interval interval_of(const StepWeight& w, const VerifyParams& p) {
  const Interval i = p.interval.value_or(w.support());
  if (!w.support().contains(i)) throw DomainError("interval is not inside the support of the weight");
  return i;
}

std::array<Rational, 3> triple_of(const StepWeight& w, const VerifyParams& p, TheoremId id) {
  if (!p.triple) throw DomainError(std::string(to_string(id)) + " needs a triple a < b < c");
  const auto t = *p.triple;
  if (!(t[0] < t[1] && t[1] < t[2])) throw DomainError("triple must satisfy a < b < c");
  if (!w.support().contains(Interval(t[0], t[2]))) throw DomainError("triple is not inside the support");
  return t;
}

long double r_of(const VerifyParams& p, TheoremId id) {
  if (!p.r) throw DomainError(std::string(to_string(id)) + " needs r");
  return *p.r;
}

long double endpoint_exponent(long double delta) {
  if (delta < 1.0L) throw DomainError("constant below 1");
  if (delta == 1.0L) return kInf;
  return delta / (delta - 1.0L);
}

}  // namespace

long double admissible_range(long double delta, TheoremId id, int n) {
  if (!(delta >= 1.0L)) throw DomainError("delta must be >= 1, got " + fmt(delta));
  if (n < 1) throw DomainError("dimension must be >= 1");
  if (delta == 1.0L) return kInf;
  if (dimensional(id)) return 1.0L + 1.0L / (std::ldexp(1.0L, n) * (delta - 1.0L));
  return delta / (delta - 1.0L);
}

long double sharp_constant(long double r, long double delta, TheoremId id, int n) {
  check_r(r, delta, id, n);
  const long double k = std::ldexp(1.0L, n) * (delta - 1.0L);
  const long double one_sided = 1.0L / (delta - (delta - 1.0L) * r);  // (r'-1)/(r'-delta)
  const long double dim = 1.0L / (1.0L - k * (r - 1.0L));              // (r'-1)/(r'-1-2^n(delta-1))
  const long double shrink = std::pow(delta, 1.0L - r);
  switch (id) {
    case TheoremId::T1_2:
    case TheoremId::T3_1_FIRST:
    case TheoremId::T3_1_SECOND:
    case TheoremId::T3_3:
    case TheoremId::COR3_5:
    case TheoremId::BSW:
      return shrink * one_sided;
    case TheoremId::T1_2_COR:
    case TheoremId::T3_3_COR_FIRST:
    case TheoremId::T3_3_COR_SECOND:
      return delta * one_sided;
    case TheoremId::L2_2:
      return one_sided;
    case TheoremId::T1_1:
    case TheoremId::COR4_3:
      return delta * dim;
    case TheoremId::T4_2:
      return shrink * dim;
    case TheoremId::L_REARINFTY:
    case TheoremId::EMB_COR_I:
    case TheoremId::EMB_COR_II:
      return delta;
    case TheoremId::T1_3:
    case TheoremId::T_AINFTY_ENDPOINT:
    case TheoremId::T_ONESIDED_ENDPOINT_A1:
    case TheoremId::T_ONESIDED_ENDPOINT_AINFTY:
    case TheoremId::WIK_BOUND:
      return 1.0L;
    case TheoremId::L4_1:
      return delta + (std::ldexp(1.0L, n) - 1.0L) * (delta - 1.0L);
  }
  return 1.0L;
}

Rational superlevel_constant(const Rational& delta, int n) {
  if (delta < Rational(1)) throw DomainError("delta must be >= 1");
  if (n < 1 || n > 30) throw DomainError("dimension out of range");
  return delta + Rational((1LL << n) - 1) * (delta - Rational(1));
}

long double profile_weak_norm(const MaximalProfile& p, long double r) {
  const long double len = ld(p.source().length());
  if (std::isinf(r)) return ld(profile_sup_on_source(p));
  std::vector<long double> crit;
  for (const auto& c : critical_levels(p)) crit.push_back(ld(c));
  auto g = [&](long double lambda) { return lambda * std::pow(distribution_ld(p, lambda, false) / len, 1.0L / r); };
  long double best = 0.0L;
  for (long double c : crit) best = std::max(best, c * std::pow(distribution_ld(p, c, true) / len, 1.0L / r));
  for (std::size_t k = 0; k + 1 < crit.size(); ++k) {
    const long double a = crit[k], b = crit[k + 1];
    constexpr int kSamples = 32;
    int arg = 1;
    long double top = 0.0L;
    for (int s = 1; s < kSamples; ++s) {
      const long double v = g(a + (b - a) * s / kSamples);
      if (v > top) top = v, arg = s;
    }
    long double lo = a + (b - a) * (arg - 1) / kSamples, hi = a + (b - a) * (arg + 1) / kSamples;
    const long double phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    for (int it = 0; it < 80; ++it) {
      const long double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
      if (g(m1) < g(m2))
        lo = m1;
      else
        hi = m2;
    }
    best = std::max({best, top, g((lo + hi) / 2)});
  }
  return best;
}

HypothesisCheck check_superlevel_hypothesis(const StepWeight& w, const Interval& i, const Rational& lambda0,
                                            long double delta) {
  if (lambda0.sign() < 0) throw DomainError("lambda0 must be >= 0");
  const StepWeight v = restrict(w, i);
  std::set<Rational> levels{lambda0};
  for (const auto& x : v.values())
    if (x >= lambda0) levels.insert(x);
  HypothesisCheck out;
  out.worst_lambda = lambda0;
  for (const auto& lambda : levels) {
    if (lambda.sign() == 0) continue;
    Rational mass(0), len(0);
    for (std::size_t k = 0; k < v.pieces(); ++k) {
      if (!(v.values()[k] > lambda)) continue;
      mass += v.values()[k] * v.piece(k).length();
      len += v.piece(k).length();
    }
    if (len.is_zero()) continue;
    const Rational ratio = mass / (lambda * len);
    if (ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_lambda = lambda;
    }
  }
  out.holds = std::isinf(delta) || out.worst_ratio <= Rational::from_long_double(delta);
  return out;
}

Verdict verify_rearrangement_lemma(const StepWeight& w, const Interval& i, int depth, bool escalate) {
  const MaximalProfile p = maximal_profile(w, i, Operator::M);
  const std::vector<Rational> levels = sample_levels(p);
  auto eval = [&](const Delta& d) {
    Verdict worst;
    bool first = true;
    for (const auto& lambda : levels) {
      const auto parts = component_intervals(superlevel_set(p, lambda), i);
      if (parts.empty()) continue;
      const Rational t = total_length(parts);
      Rational floor_value;
      bool have = false;
      for (const auto& j : parts) {
        const Rational m = profile_min_on(p, j);
        if (!have || m < floor_value) floor_value = m, have = true;
      }
      const Real lhs = divide(integrate_union(p, parts), t);
      const Real rhs = d.exact && d.exact->is_integer() && *d.exact == Rational(1)
                           ? Real::from(floor_value)
                           : (d.exact ? Real::from(*d.exact * floor_value) : Real::approx(d.value * ld(floor_value)));
      VerdictParams vp;
      vp.delta = d.value;
      vp.delta_exact = d.exact;
      if (d.depth > 0) vp.depth = d.depth;
      Verdict v = make_verdict(TheoremId::L_REARINFTY, vp, lhs, rhs, lambda, d.source);
      if (first || v.ratio.value > worst.ratio.value || (!v.holds && worst.holds)) worst = v;
      first = false;
    }
    return worst;
  };
  int dd = depth;
  Verdict v = eval(grid_delta(fujii_wilson_constant(w, RefinementGrid::for_weight(w, dd)), dd));
  while (escalate && !v.holds && dd < kMaxEscalationDepth) {
    dd = std::min(kMaxEscalationDepth, dd + 2);
    v = eval(grid_delta(fujii_wilson_constant(w, RefinementGrid::for_weight(w, dd)), dd));
  }
  return v;
}

Verdict verify_wik_bound(const StepWeight& w, const Interval& i, long double delta) {
  const ConstantReport a1 = a1_constant(restrict(w, i));
  if (delta < a1.value.value * (1.0L - tolerance().relative))
    throw DomainError("delta = " + fmt(delta) + " is below the A1 constant " + fmt(a1.value.value));
  const StepWeight star = rearrangement(w, i);
  const Rational len = i.length();
  const Rational total = star.total_mass();
  std::set<Rational> ts;
  for (std::size_t k = 1; k < star.breakpoints().size(); ++k) ts.insert(star.breakpoints()[k]);
  for (int k = 1; k <= 64; ++k) ts.insert(len * Rational(k, 64));
  VerdictParams vp;
  vp.delta = delta;
  Verdict worst;
  bool first = true;
  for (const auto& t : ts) {
    const Real lhs = Real::from(star.cumulative(t));
    const Rational frac = t / len;
    const Real rhs = frac == Rational(1) ? Real::from(total)
                                         : Real::approx(std::pow(ld(frac), 1.0L / delta) * ld(total));
    Verdict v = make_verdict(TheoremId::WIK_BOUND, vp, lhs, rhs, t, "given");
    if (first || v.ratio.value > worst.ratio.value || (!v.holds && worst.holds)) worst = v;
    first = false;
  }
  return worst;
}

namespace {

Verdict embedding_ratio(TheoremId id, const VerdictParams& vp, const Real& part, const Real& whole,
                        const Rational& e_len, const Rational& len, long double delta, const std::string& src,
                        Witness witness) {
  const Real lhs = part.exact && whole.exact ? Real::from(*part.exact / *whole.exact)
                                             : Real::approx(part.value / whole.value);
  const Rational frac = e_len / len;
  Real rhs;
  if (frac == Rational(1) && vp.delta_exact)
    rhs = Real::from(*vp.delta_exact);
  else
    rhs = Real::approx(delta * std::pow(ld(frac), 1.0L / delta));
  return make_verdict(id, vp, lhs, rhs, std::move(witness), src);
}

}  // namespace

Verdict verify_embedding(const StepWeight& w, const Interval& i, const std::vector<Interval>& e, EmbeddingForm which,
                         int depth) {
  for (const auto& j : e)
    if (!i.contains(j)) throw DomainError("set E is not inside I");
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b)
      if (max(e[a].lo(), e[b].lo()) < min(e[a].hi(), e[b].hi())) throw DomainError("intervals of E overlap");
  const TheoremId id = which == EmbeddingForm::I ? TheoremId::EMB_COR_I : TheoremId::EMB_COR_II;
  const Delta d = which == EmbeddingForm::I
                      ? exact_delta(a1_constant(w))
                      : grid_delta(fujii_wilson_constant(w, RefinementGrid::for_weight(w, depth)), depth);
  VerdictParams vp;
  vp.delta = d.value;
  vp.delta_exact = d.exact;
  if (d.depth > 0) vp.depth = d.depth;

  // candidate sets: the given E, or every superlevel set when E is empty
  std::vector<std::pair<std::vector<Interval>, Witness>> sets;
  if (!e.empty()) {
    sets.emplace_back(e, e.size() == 1 ? Witness(e[0]) : Witness{});
  }

  if (which == EmbeddingForm::I) {
    const StepWeight v = restrict(w, i);
    if (e.empty()) {
      std::set<Rational> values(v.values().begin(), v.values().end());
      for (const auto& level : values) {
        std::vector<Interval> parts;
        for (std::size_t k = 0; k < v.pieces(); ++k)
          if (v.values()[k] >= level) parts.push_back(v.piece(k));
        sets.emplace_back(parts, level);
      }
    }
    const Real whole = Real::from(v.total_mass());
    Verdict worst;
    bool first = true;
    for (const auto& [parts, wit] : sets) {
      Rational m(0);
      for (const auto& j : parts) m += v.mass(j);
      Verdict vd = embedding_ratio(id, vp, Real::from(m), whole, total_length(parts), i.length(), d.value, d.source,
                                   wit);
      if (first || vd.ratio.value > worst.ratio.value || (!vd.holds && worst.holds)) worst = vd;
      first = false;
    }
    return worst;
  }

  const MaximalProfile p = maximal_profile(w, i, Operator::M);
  if (e.empty()) {
    for (const auto& lambda : sample_levels(p)) {
      auto parts = component_intervals(superlevel_set(p, lambda), i);
      if (!parts.empty()) sets.emplace_back(parts, lambda);
    }
  }
  const Real whole = integrate_profile(p, i);
  Verdict worst;
  bool first = true;
  for (const auto& [parts, wit] : sets) {
    Verdict vd = embedding_ratio(id, vp, integrate_union(p, parts), whole, total_length(parts), i.length(), d.value,
                                 d.source, wit);
    if (first || vd.ratio.value > worst.ratio.value || (!vd.holds && worst.holds)) worst = vd;
    first = false;
  }
  return worst;
}

Verdict verify_extremizer_equality(long double tau, long double r) {
  if (!(tau > 0.0L && tau < 1.0L)) throw DomainError("tau must lie in (0, 1)");
  const long double delta = 1.0L / tau;
  check_r(r, delta, TheoremId::T3_3, 1);
  const long double lhs = power_oracle(tau, OracleQuery::AvgPower, r);
  const long double m2 = power_oracle(tau, OracleQuery::Mminus2, 1.0L);
  const long double mass_mminus = power_oracle(tau, OracleQuery::Mass, 1.0L) / tau;
  const long double rhs = sharp_constant(r, delta, TheoremId::T3_3, 1) * std::pow(m2, r - 1.0L) * mass_mminus;
  VerdictParams vp;
  vp.r = r;
  vp.tau = tau;
  vp.delta = delta;
  return make_verdict(TheoremId::T3_3, vp, Real::approx(lhs), Real::approx(rhs), {}, "closed form");
}

long double theorem_delta(TheoremId id, const StepWeight& w, int depth) {
  const Source s = delta_source(id);
  if (s == Source::Given) throw DomainError(std::string(to_string(id)) + " takes its constant as input");
  return compute_delta(s, w, depth).value;
}

Verdict verify(TheoremId id, const StepWeight& w, const VerifyParams& params) {
  switch (id) {
    case TheoremId::T4_2:
    case TheoremId::COR4_3:
    case TheoremId::L4_1:
      throw DomainError(std::string(to_string(id)) + " is stated for dyadic or measure-grid weights");
    case TheoremId::L_REARINFTY:
      return verify_rearrangement_lemma(w, interval_of(w, params), params.depth, params.escalate);
    case TheoremId::WIK_BOUND: {
      const Interval i = interval_of(w, params);
      const long double delta = params.delta.value_or(a1_constant(restrict(w, i)).value.value);
      return verify_wik_bound(w, i, delta);
    }
    case TheoremId::EMB_COR_I:
      return verify_embedding(w, interval_of(w, params), params.set, EmbeddingForm::I, params.depth);
    case TheoremId::EMB_COR_II:
      return verify_embedding(w, interval_of(w, params), params.set, EmbeddingForm::II, params.depth);
    default:
      break;
  }

  if (id == TheoremId::L2_2) {
    const Interval i = interval_of(w, params);
    const long double r = r_of(params, id);
    const Rational lambda0 = params.lambda0.value_or(average(w, i));
    HypothesisCheck h = check_superlevel_hypothesis(w, i, lambda0, params.delta.value_or(kInf));
    Delta d;
    if (params.delta) {
      if (!h.holds)
        throw DomainError("superlevel hypothesis fails at lambda = " + h.worst_lambda.str() + " (ratio " +
                          h.worst_ratio.str() + " > delta)");
      d.value = *params.delta;
      d.source = "given";
    } else {
      const Rational dm = max(h.worst_ratio, Rational(1));
      d.value = ld(dm);
      d.exact = dm;
      d.source = "hypothesis minimum";
    }
    check_r(r, d.value, id, 1);
    const Real lhs = power_average(w, i, r);
    const Real avg = Real::from(average(w, i));
    const Real rhs = product(times(sharp_constant(r, d.value, id, 1), power_of(lambda0, r - 1.0L)), avg);
    VerdictParams vp = base_params(r, d);
    return make_verdict(id, vp, lhs, rhs, lambda0, d.source);
  }

  auto eval = [&](const Delta& d) -> Verdict {
    const Interval i = interval_of(w, params);
    const Rational len = i.length();
    switch (id) {
      case TheoremId::T1_1:
      case TheoremId::T1_2_COR:
      case TheoremId::BSW:
      case TheoremId::COR3_5: {
        const long double r = r_of(params, id);
        check_r(r, d.value, id, 1);
        const Real lhs = power_average(w, i, r);
        const Real rhs = times(sharp_constant(r, d.value, id, 1), power_of(average(w, i), r));
        return make_verdict(id, base_params(r, d), lhs, rhs, i, d.source);
      }
      case TheoremId::T1_2: {
        const long double r = r_of(params, id);
        check_r(r, d.value, id, 1);
        const MaximalProfile p = maximal_profile(w, i, Operator::M);
        const Real mass = integrate_profile(p, i);
        const Real rhs = times(sharp_constant(r, d.value, id, 1), power_of(divide(mass, len), r));
        const long double budget = tolerance().relative * 1e-3L * std::fabs(rhs.value) * ld(len);
        const Real lhs = divide(integrate_profile_power(p, i, r, budget), len);
        return make_verdict(id, base_params(r, d), lhs, rhs, i, d.source);
      }
      case TheoremId::T1_3: {
        const long double rw = endpoint_exponent(d.value);
        const Real lhs = std::isinf(rw) ? Real::from(restrict(w, i).max_value()) : weak_lorentz_norm(w, i, rw);
        const Real rhs = Real::from(average(w, i));
        VerdictParams vp = base_params(rw, d);
        if (std::isinf(rw)) vp.r.reset();
        return make_verdict(id, vp, lhs, rhs, i, d.source);
      }
      case TheoremId::T3_1_FIRST: {
        const long double r = r_of(params, id);
        check_r(r, d.value, id, 1);
        const Real lhs = power_integral(w, i, r);
        const Real mb = mminus_at(w, i, i.hi());
        const Real rhs = times(sharp_constant(r, d.value, id, 1),
                               product(power_of(mb, r - 1.0L), Real::from(w.mass(i))));
        return make_verdict(id, base_params(r, d), lhs, rhs, i, d.source);
      }
      case TheoremId::T3_1_SECOND:
      case TheoremId::T3_3_COR_SECOND: {
        const long double r = r_of(params, id);
        check_r(r, d.value, id, 1);
        const auto t = triple_of(w, params, id);
        const Interval ab(t[0], t[1]);
        Real inner;
        if (id == TheoremId::T3_1_SECOND) {
          inner = power_integral(w, ab, r);
        } else {
          const MaximalProfile p = maximal_profile(w, ab, Operator::Mminus);
          inner = integrate_profile_power(p, ab, r, 0.0L);
        }
        const Real lhs = product(power_of(t[2] - t[1], r - 1.0L), inner);
        const Real rhs = times(sharp_constant(r, d.value, id, 1), power_of(w.mass(Interval(t[0], t[2])), r));
        return make_verdict(id, base_params(r, d), lhs, rhs, Interval(t[0], t[2]), d.source);
      }
      case TheoremId::T3_3:
      case TheoremId::T3_3_COR_FIRST: {
        const long double r = r_of(params, id);
        check_r(r, d.value, id, 1);
        const MaximalProfile p = maximal_profile(w, i, Operator::Mminus);
        Real rhs;
        if (id == TheoremId::T3_3) {
          const Real m2 = eval_mminus2(w, i, i.hi(), params.depth);
          rhs = times(sharp_constant(r, d.value, id, 1), product(power_of(m2, r - 1.0L), integrate_profile(p, i)));
        } else {
          const Real mb = mminus_at(w, i, i.hi());
          rhs = times(sharp_constant(r, d.value, id, 1), product(power_of(mb, r - 1.0L), Real::from(w.mass(i))));
        }
        const long double budget = tolerance().relative * 1e-3L * std::fabs(rhs.value);
        const Real lhs = integrate_profile_power(p, i, r, budget);
        return make_verdict(id, base_params(r, d), lhs, rhs, i, d.source);
      }
      case TheoremId::T_AINFTY_ENDPOINT: {
        const long double rw = endpoint_exponent(d.value);
        const MaximalProfile p = maximal_profile(w, i, Operator::M);
        const Real lhs = std::isinf(rw) ? Real::from(profile_sup_on_source(p)) : Real::approx(profile_weak_norm(p, rw));
        const Real rhs = divide(integrate_profile(p, i), len);
        VerdictParams vp = base_params(rw, d);
        if (std::isinf(rw)) vp.r.reset();
        return make_verdict(id, vp, lhs, rhs, i, d.source);
      }
      case TheoremId::T_ONESIDED_ENDPOINT_A1: {
        const long double rw = endpoint_exponent(d.value);
        const Real mb = mminus_at(w, i, i.hi());
        VerdictParams vp = base_params(rw, d);
        if (std::isinf(rw)) {
          vp.r.reset();
          return make_verdict(id, vp, Real::from(restrict(w, i).max_value()), mb, i, d.source);
        }
        const Real lhs = power_of(weak_lorentz_norm(w, i, rw), rw);
        const Real rhs = product(power_of(mb, rw - 1.0L), Real::from(w.mass(i) / len));
        return make_verdict(id, vp, lhs, rhs, i, d.source);
      }
      case TheoremId::T_ONESIDED_ENDPOINT_AINFTY: {
        const long double rw = endpoint_exponent(d.value);
        const MaximalProfile p = maximal_profile(w, i, Operator::Mminus);
        const Real m2 = eval_mminus2(w, i, i.hi(), params.depth);
        VerdictParams vp = base_params(rw, d);
        if (std::isinf(rw)) {
          vp.r.reset();
          return make_verdict(id, vp, Real::from(profile_sup_on_source(p)), m2, i, d.source);
        }
        const Real lhs = Real::approx(std::pow(profile_weak_norm(p, rw), rw));
        const Real rhs = product(power_of(m2, rw - 1.0L), divide(integrate_profile(p, i), len));
        return make_verdict(id, vp, lhs, rhs, i, d.source);
      }
      default:
        break;
    }
    throw DomainError("unsupported theorem " + std::string(to_string(id)));
  };
  return fail_safe_escalate(id, w, params, eval);
}

}  // namespace rhilab
