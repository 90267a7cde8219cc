#include "rhilab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "rhilab/detail/envelope.hpp"
#include "rhilab/errors.hpp"
#include "rhilab/parallel.hpp"

namespace rhilab {

using detail::Steps;

RefinementGrid::RefinementGrid(std::vector<Rational> base, int depth) : base_(std::move(base)), depth_(depth) {
  if (depth_ < 0) throw DomainError("refinement depth must be nonnegative");
  if (depth_ > 20) throw DomainError("refinement depth above 20 is not supported");
  std::sort(base_.begin(), base_.end());
  base_.erase(std::unique(base_.begin(), base_.end()), base_.end());
  if (base_.size() < 2) throw DomainError("refinement grid needs at least two base points");
  const long long parts = 1LL << depth_;
  for (std::size_t k = 0; k + 1 < base_.size(); ++k) {
    const Rational step = (base_[k + 1] - base_[k]) / Rational(parts);
    for (long long j = 0; j < parts; ++j) points_.push_back(base_[k] + step * Rational(j));
  }
  points_.push_back(base_.back());
}

RefinementGrid RefinementGrid::for_weight(const StepWeight& w, int depth) {
  return RefinementGrid({w.breakpoints().begin(), w.breakpoints().end()}, depth);
}

namespace {

template <class T>
struct A1Result {
  T value;
  std::size_t piece;
};

template <class T>
A1Result<T> a1_generic(const Steps<T>& s, bool plus_only) {
  const auto mm = detail::minus_at_breakpoints(s);
  std::vector<T> pp;
  if (!plus_only) pp = detail::plus_at_breakpoints(s);
  A1Result<T> best{T(1), 0};
  for (std::size_t k = 0; k < s.pieces(); ++k) {
    T top;
    if (plus_only) {
      // M- decreases on each piece; its sup there is the right limit at the left end
      top = k == 0 ? s.v[0] : std::max(s.v[k], mm[k]);
    } else {
      top = std::max(std::max(mm[k], pp[k]), std::max(mm[k + 1], pp[k + 1]));
    }
    const T ratio = top / s.v[k];
    if (best.value < ratio) best = {ratio, k};
  }
  return best;
}

ConstantReport exact_report(ConstantKind kind, const StepWeight& w, bool plus_only) {
  const auto r = a1_generic(Steps<Rational>::from(w), plus_only);
  ConstantReport rep;
  rep.kind = kind;
  rep.value = Real::from(r.value);
  rep.is_lower_bound = false;
  rep.witness = w.piece(r.piece);
  return rep;
}

struct Best {
  long double value = -1.0L;
  std::size_t a = 0;
  std::size_t b = 0;
  bool better_than(const Best& o) const {
    if (value != o.value) return value > o.value;
    return std::tie(a, b) < std::tie(o.a, o.b);
  }
};

// Max over all grid intervals (a, b) of f(a, b); ties go to the lexicographically first interval.
template <class F>
Best sweep(std::size_t n, F&& f) {
  std::vector<Best> per(chunk_count(n));
  parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Best local;
    auto worker = f;
    for (std::size_t a = begin; a < end; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const long double v = worker(a, b);
        if (v > local.value) local = {v, a, b};
      }
    per[chunk] = local;
  });
  Best best;
  for (const auto& b : per)
    if (b.better_than(best)) best = b;
  return best;
}

// Per-piece data in long double, evaluated the same way at every depth so that
// refinement can only add candidates.
struct Pieces {
  std::vector<long double> x;
  std::vector<long double> g;

  long double integral(long double a, long double b) const {
    long double s = 0.0L;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const long double lo = std::max(a, x[k]), hi = std::min(b, x[k + 1]);
      if (lo < hi) s += g[k] * (hi - lo);
    }
    return s;
  }
};

template <class G>
Pieces pieces_of(const StepWeight& w, G&& g) {
  Pieces p;
  for (const auto& b : w.breakpoints()) p.x.push_back(b.to_long_double());
  for (const auto& v : w.values()) p.g.push_back(g(v));
  return p;
}

std::vector<long double> points_ld(const RefinementGrid& grid) {
  std::vector<long double> out;
  out.reserve(grid.points().size());
  for (const auto& p : grid.points()) out.push_back(p.to_long_double());
  return out;
}

ConstantReport grid_report(ConstantKind kind, const RefinementGrid& grid, const Best& best) {
  ConstantReport rep;
  rep.kind = kind;
  rep.value = Real::approx(best.value);
  rep.is_lower_bound = true;
  rep.refinement_depth = grid.depth();
  rep.witness = Interval(grid.points()[best.a], grid.points()[best.b]);
  return rep;
}

ConstantReport constant_weight_report(ConstantKind kind, const StepWeight& w, const RefinementGrid& grid,
                                      const Rational& value) {
  ConstantReport rep;
  rep.kind = kind;
  rep.value = Real::from(value);
  rep.is_lower_bound = true;
  rep.refinement_depth = grid.depth();
  rep.witness = w.support();
  return rep;
}

void check_grid(const StepWeight& w, const RefinementGrid& grid) {
  if (grid.points().front() < w.support().lo() || grid.points().back() > w.support().hi())
    throw DomainError("refinement grid leaves the weight support");
}

// Reusable buffers for the floating profile integral of one interval.
struct FwWorkspace {
  Steps<long double> steps;
  std::vector<detail::Seg<long double>> segs;
};

long double fw_value(const Pieces& w, long double a, long double b, detail::Side side, FwWorkspace& ws) {
  auto& s = ws.steps;
  s.x.clear();
  s.v.clear();
  s.x.push_back(a);
  for (std::size_t k = 0; k < w.g.size(); ++k) {
    if (w.x[k + 1] <= a || w.x[k] >= b) continue;
    s.v.push_back(w.g[k]);
    s.x.push_back(std::min(w.x[k + 1], b));
  }
  s.rebuild_cumulative();
  const long double mass = s.W.back();
  long double integral = 0.0L;
  if (s.pieces() == 1) return 1.0L;
  for (const auto& seg : detail::profile(s, side)) {
    if (seg.fn.is_const) {
      integral += seg.fn.a * (seg.hi - seg.lo);
    } else {
      const long double c = seg.fn.a - seg.fn.v * seg.fn.q;
      integral += seg.fn.v * (seg.hi - seg.lo) +
                  c * std::log(std::fabs(seg.fn.q - seg.lo) / std::fabs(seg.fn.q - seg.hi));
    }
  }
  return integral / mass;
}

ConstantReport fw_generic(ConstantKind kind, const StepWeight& w, const RefinementGrid& grid, detail::Side side) {
  check_grid(w, grid);
  if (w.is_constant()) return constant_weight_report(kind, w, grid, Rational(1));
  const auto pts = points_ld(grid);
  const Pieces p = pieces_of(w, [](const Rational& v) { return v.to_long_double(); });
  FwWorkspace proto;
  const Best best = sweep(pts.size(), [&pts, &p, side, ws = proto](std::size_t a, std::size_t b) mutable {
    return fw_value(p, pts[a], pts[b], side, ws);
  });
  return grid_report(kind, grid, best);
}

}  // namespace

ConstantReport a1_constant(const StepWeight& w) { return exact_report(ConstantKind::A1, w, false); }
ConstantReport a1_plus_constant(const StepWeight& w) { return exact_report(ConstantKind::A1plus, w, true); }

long double a1_constant_fast(const StepWeight& w) {
  return a1_generic(Steps<long double>::from(w), false).value;
}
long double a1_plus_constant_fast(const StepWeight& w) {
  return a1_generic(Steps<long double>::from(w), true).value;
}
long double a1_constant_fast(std::span<const long double> breakpoints, std::span<const long double> values,
                             bool plus_only) {
  Steps<long double> s;
  s.x.assign(breakpoints.begin(), breakpoints.end());
  s.v.assign(values.begin(), values.end());
  s.rebuild_cumulative();
  return a1_generic(s, plus_only).value;
}

ConstantReport ap_constant(const StepWeight& w, long double p, const RefinementGrid& grid) {
  if (!(p > 1.0L)) throw DomainError("A_p needs p > 1");
  check_grid(w, grid);
  if (w.is_constant()) return constant_weight_report(ConstantKind::Ap, w, grid, Rational(1));
  const auto& gp = grid.points();
  if (p == 2.0L) {
    // exact: (avg w)(avg 1/w)
    Best best;
    Rational best_value;
    for (std::size_t a = 0; a < gp.size(); ++a)
      for (std::size_t b = a + 1; b < gp.size(); ++b) {
        const Interval j(gp[a], gp[b]);
        const Rational v = average(w, j) * *power_average(w, j, -1.0L).exact;
        if (best.value < 0 || best_value < v) {
          best_value = v;
          best = {0, a, b};
        }
      }
    ConstantReport rep = grid_report(ConstantKind::Ap, grid, best);
    rep.value = Real::from(best_value);
    return rep;
  }
  const auto pts = points_ld(grid);
  const long double e = -1.0L / (p - 1.0L);
  const Pieces pw = pieces_of(w, [](const Rational& v) { return v.to_long_double(); });
  const Pieces ps = pieces_of(w, [e](const Rational& v) { return std::pow(v.to_long_double(), e); });
  const Best best = sweep(pts.size(), [&](std::size_t a, std::size_t b) {
    const long double len = pts[b] - pts[a];
    return (pw.integral(pts[a], pts[b]) / len) * std::pow(ps.integral(pts[a], pts[b]) / len, p - 1.0L);
  });
  return grid_report(ConstantKind::Ap, grid, best);
}

ConstantReport fujii_wilson_constant(const StepWeight& w, const RefinementGrid& grid) {
  return fw_generic(ConstantKind::FujiiWilson, w, grid, detail::Side::Both);
}

ConstantReport fujii_wilson_plus_constant(const StepWeight& w, const RefinementGrid& grid) {
  return fw_generic(ConstantKind::FujiiWilsonPlus, w, grid, detail::Side::Minus);
}

ConstantReport khrushchev_constant(const StepWeight& w, const RefinementGrid& grid) {
  check_grid(w, grid);
  if (w.is_constant()) return constant_weight_report(ConstantKind::Khrushchev, w, grid, Rational(1));
  const auto pts = points_ld(grid);
  const Pieces pw = pieces_of(w, [](const Rational& v) { return v.to_long_double(); });
  const Pieces pl = pieces_of(w, [](const Rational& v) { return std::log(v.to_long_double()); });
  const Best best = sweep(pts.size(), [&](std::size_t a, std::size_t b) {
    const long double len = pts[b] - pts[a];
    return (pw.integral(pts[a], pts[b]) / len) * std::exp(-pl.integral(pts[a], pts[b]) / len);
  });
  return grid_report(ConstantKind::Khrushchev, grid, best);
}

Rational gurov_reshetnyak_functional(const StepWeight& w, const Interval& j) {
  const Rational mass = w.mass(j);
  const Rational avg = mass / j.length();
  Rational osc(0);
  const auto bp = w.breakpoints();
  for (std::size_t k = 0; k < w.pieces(); ++k) {
    const Rational lo = max(bp[k], j.lo()), hi = min(bp[k + 1], j.hi());
    if (lo < hi) osc += (w.values()[k] - avg).abs() * (hi - lo);
  }
  return osc / mass;
}

ConstantReport gurov_reshetnyak(const StepWeight& w, const RefinementGrid& grid) {
  check_grid(w, grid);
  if (w.is_constant()) return constant_weight_report(ConstantKind::GurovReshetnyak, w, grid, Rational(0));
  const auto& gp = grid.points();
  const std::size_t n = gp.size();
  struct Local {
    Rational value{-1};
    std::size_t a = 0, b = 0;
  };
  std::vector<Local> per(chunk_count(n));
  parallel_chunks(n, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Local local;
    for (std::size_t a = begin; a < end; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const Rational v = gurov_reshetnyak_functional(w, Interval(gp[a], gp[b]));
        if (local.value < v) local = {v, a, b};
      }
    per[chunk] = std::move(local);
  });
  Local best;
  for (auto& l : per)
    if (best.value < l.value) best = std::move(l);
  ConstantReport rep;
  rep.kind = ConstantKind::GurovReshetnyak;
  rep.value = Real::from(best.value);
  rep.is_lower_bound = true;
  rep.refinement_depth = grid.depth();
  rep.witness = Interval(gp[best.a], gp[best.b]);
  return rep;
}

Real fujii_wilson_functional(const StepWeight& w, const Interval& j, Operator op) {
  if (op != Operator::M && op != Operator::Mminus)
    throw DomainError("Fujii-Wilson functional is defined for M and Mminus");
  const auto p = maximal_profile(w, j, op);
  const Real integral = integrate_profile(p, j);
  const Rational mass = w.mass(j);
  if (integral.is_exact()) return Real::from(*integral.exact / mass);
  return Real::approx(integral.value / mass.to_long_double());
}

}  // namespace rhilab
