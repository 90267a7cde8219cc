#include "rhilab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include "rhilab/constants.hpp"
#include "rhilab/errors.hpp"
#include "rhilab/parallel.hpp"
#include "rhilab/rhi.hpp"

namespace rhilab {

PowerWeight::PowerWeight(long double tau) : tau_(tau) {
  if (!(tau > 0.0L && tau < 1.0L)) throw DomainError("tau must lie in (0, 1)");
}

long double PowerWeight::mass(long double t) const { return std::pow(t, tau_) / tau_; }
long double PowerWeight::mminus(long double x) const { return std::pow(x, tau_ - 1.0L) / tau_; }
long double PowerWeight::mminus2(long double x) const { return std::pow(x, tau_ - 1.0L) / (tau_ * tau_); }

long double PowerWeight::avg_weight_power(long double r) const {
  const long double den = (tau_ - 1.0L) * r + 1.0L;
  if (!(den > 0.0L)) throw RangeError("power integral diverges for r >= 1/(1 - tau)");
  return 1.0L / den;
}

long double PowerWeight::avg_power(long double r) const { return std::pow(tau_, -r) * avg_weight_power(r); }

long double power_oracle(long double tau, OracleQuery query, long double arg) {
  const PowerWeight w(tau);
  switch (query) {
    case OracleQuery::Mass:
      return w.mass(arg);
    case OracleQuery::Mminus:
      return w.mminus(arg);
    case OracleQuery::Mminus2:
      return w.mminus2(arg);
    case OracleQuery::A1plus:
      return w.a1_plus();
    case OracleQuery::AvgPower:
      return w.avg_power(arg);
  }
  return 0.0L;
}

namespace {

// Mass of x^{tau-1} over (a, b), computed without cancellation.
long double cell_mass(long double tau, long double a, long double b) {
  if (a == 0.0L) return std::pow(b, tau) / tau;
  return std::pow(a, tau) * std::expm1(tau * std::log1p((b - a) / a)) / tau;
}

StepWeight from_points(long double tau, const std::vector<long double>& x, int bits) {
  std::vector<Rational> bp;
  std::vector<Rational> vals;
  bp.reserve(x.size());
  for (long double t : x) bp.push_back(t == 0.0L || t == 1.0L ? Rational(static_cast<long long>(t)) : Rational::approximate(t, bits));
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const long double avg = cell_mass(tau, x[k], x[k + 1]) / (x[k + 1] - x[k]);
    vals.push_back(Rational::approximate(avg, bits));
  }
  return StepWeight(std::move(bp), std::move(vals));
}

}  // namespace

StepWeight step_discretize(long double tau, int m, int bits) {
  PowerWeight check(tau);
  (void)check;
  if (m < 1) throw DomainError("piece count must be >= 1");
  std::vector<Rational> bp;
  std::vector<Rational> vals;
  for (int k = 0; k <= m; ++k) bp.emplace_back(k, m);
  for (int k = 0; k < m; ++k) {
    const long double a = static_cast<long double>(k) / m, b = static_cast<long double>(k + 1) / m;
    vals.push_back(Rational::approximate(cell_mass(tau, a, b) * m, bits));
  }
  return StepWeight(std::move(bp), std::move(vals));
}

StepWeight graded_discretize(long double tau, int m, long double q, int bits) {
  PowerWeight check(tau);
  (void)check;
  if (m < 1) throw DomainError("piece count must be >= 1");
  if (!(q > 0.0L && q < 1.0L)) throw DomainError("grading ratio must lie in (0, 1)");
  std::vector<long double> x{0.0L};
  for (int k = m - 1; k >= 1; --k) x.push_back(std::pow(q, static_cast<long double>(k)));
  x.push_back(1.0L);
  return from_points(tau, x, bits);
}

std::string_view to_string(SearchVariant v) {
  switch (v) {
    case SearchVariant::T3_1_FIRST:
      return "t3.1a";
    case SearchVariant::T3_1_SECOND:
      return "t3.1b";
    case SearchVariant::BSW:
      return "bsw";
    case SearchVariant::T1_3:
      return "t1.3";
  }
  return "?";
}

SearchVariant parse_variant(std::string_view text) {
  for (auto v : {SearchVariant::T3_1_FIRST, SearchVariant::T3_1_SECOND, SearchVariant::BSW, SearchVariant::T1_3})
    if (text == to_string(v)) return v;
  const TheoremId id = parse_theorem(text);
  if (id == TheoremId::T3_1_FIRST) return SearchVariant::T3_1_FIRST;
  if (id == TheoremId::T3_1_SECOND) return SearchVariant::T3_1_SECOND;
  if (id == TheoremId::BSW) return SearchVariant::BSW;
  if (id == TheoremId::T1_3) return SearchVariant::T1_3;
  throw ParseError("no sharpness variant for '" + std::string(text) + "'");
}

namespace {

struct Num {
  std::vector<long double> x;  // m + 1 breakpoints
  std::vector<long double> v;  // m values
};

bool one_sided(SearchVariant v) { return v == SearchVariant::T3_1_FIRST || v == SearchVariant::T3_1_SECOND; }

long double constant_of(SearchVariant var, const Num& w) { return a1_constant_fast(w.x, w.v, one_sided(var)); }

TheoremId theorem_of(SearchVariant v) {
  switch (v) {
    case SearchVariant::T3_1_FIRST:
      return TheoremId::T3_1_FIRST;
    case SearchVariant::T3_1_SECOND:
      return TheoremId::T3_1_SECOND;
    case SearchVariant::BSW:
      return TheoremId::BSW;
    case SearchVariant::T1_3:
      return TheoremId::T1_3;
  }
  return TheoremId::BSW;
}

long double ratio_num(SearchVariant var, const Num& w, long double delta, long double r, long double c) {
  const std::size_t m = w.v.size();
  std::vector<long double> mass(m + 1, 0.0L), power(m + 1, 0.0L);
  for (std::size_t k = 0; k < m; ++k) {
    const long double len = w.x[k + 1] - w.x[k];
    mass[k + 1] = mass[k] + w.v[k] * len;
    if (var != SearchVariant::T1_3) power[k + 1] = power[k] + std::pow(w.v[k], r) * len;
  }
  const long double lo = w.x.front(), hi = w.x.back(), total = mass[m], span = hi - lo;
  switch (var) {
    case SearchVariant::T3_1_FIRST: {
      long double mb = 0.0L;
      for (std::size_t k = 0; k < m; ++k) mb = std::max(mb, (total - mass[k]) / (hi - w.x[k]));
      return power[m] / (c * std::pow(mb, r - 1.0L) * total);
    }
    case SearchVariant::T3_1_SECOND: {
      long double best = 0.0L;
      for (std::size_t k = 1; k < m; ++k) best = std::max(best, std::pow(hi - w.x[k], r - 1.0L) * power[k]);
      return best / (c * std::pow(total, r));
    }
    case SearchVariant::BSW:
      return (power[m] / span) / (c * std::pow(total / span, r));
    case SearchVariant::T1_3: {
      std::vector<std::size_t> order(m);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return w.v[a] > w.v[b]; });
      const long double avg = total / span;
      if (delta <= 1.0L) return w.v[order.front()] / avg;
      const long double rw = delta / (delta - 1.0L);
      long double len = 0.0L, best = 0.0L;
      for (auto k : order) {
        len += w.x[k + 1] - w.x[k];
        best = std::max(best, w.v[k] * std::pow(len / span, 1.0L / rw));
      }
      return best / avg;
    }
  }
  return 0.0L;
}

Num to_num(const StepWeight& w) {
  Num n;
  for (const auto& b : w.breakpoints()) n.x.push_back(b.to_long_double());
  for (const auto& v : w.values()) n.v.push_back(v.to_long_double());
  return n;
}

StepWeight to_step(const Num& n) {
  std::vector<Rational> bp, vals;
  for (std::size_t k = 0; k < n.x.size(); ++k) {
    Rational b = Rational::approximate(n.x[k], 64);
    if (!bp.empty() && !(bp.back() < b)) throw DomainError("witness breakpoints collapsed");
    bp.push_back(std::move(b));
  }
  for (long double v : n.v) vals.push_back(Rational::approximate(v, 64));
  return StepWeight(std::move(bp), std::move(vals));
}

// theta = (log values, log lengths); lengths are normalized onto (0, 1).
Num decode(const std::vector<long double>& theta, std::size_t m) {
  Num n;
  n.v.resize(m);
  n.x.assign(m + 1, 0.0L);
  long double shift = *std::max_element(theta.begin() + m, theta.end());
  std::vector<long double> len(m);
  long double sum = 0.0L;
  for (std::size_t k = 0; k < m; ++k) {
    n.v[k] = std::exp(theta[k]);
    len[k] = std::exp(theta[m + k] - shift);
    sum += len[k];
  }
  for (std::size_t k = 0; k < m; ++k) n.x[k + 1] = n.x[k] + len[k] / sum;
  n.x[m] = 1.0L;
  return n;
}

std::vector<long double> encode(const Num& n) {
  const std::size_t m = n.v.size();
  std::vector<long double> theta(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    theta[k] = std::log(n.v[k]);
    theta[m + k] = std::log(n.x[k + 1] - n.x[k]);
  }
  return theta;
}

// Scalar shrinkage (1-s) w + s avg(w) onto {constant <= delta}.
Num project(SearchVariant var, Num w, long double delta) {
  const long double slack = delta * (1.0L + 1e-15L);
  if (constant_of(var, w) <= slack) return w;
  long double total = 0.0L;
  for (std::size_t k = 0; k < w.v.size(); ++k) total += w.v[k] * (w.x[k + 1] - w.x[k]);
  const long double avg = total / (w.x.back() - w.x.front());
  auto shrink = [&](long double s) {
    Num t = w;
    for (auto& v : t.v) v = (1.0L - s) * v + s * avg;
    return t;
  };
  long double lo = 0.0L, hi = 1.0L;
  for (int it = 0; it < 40 && hi - lo > 1e-12L; ++it) {
    const long double mid = (lo + hi) / 2;
    if (constant_of(var, shrink(mid)) <= slack)
      hi = mid;
    else
      lo = mid;
  }
  return shrink(hi);
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

long double variant_ratio(SearchVariant v, const StepWeight& w, long double delta, long double r) {
  const long double c = v == SearchVariant::T1_3 ? 1.0L : sharp_constant(r, delta, theorem_of(v), 1);
  return ratio_num(v, to_num(w), delta, r, c);
}

SearchResult sharpness_search(const SearchConfig& cfg) {
  if (!(cfg.delta >= 1.0L)) throw DomainError("delta budget must be >= 1");
  if (cfg.pieces < 1) throw DomainError("piece count must be >= 1");
  if (cfg.budget < 1) throw DomainError("budget must be >= 1");
  const SearchVariant var = cfg.variant;
  const long double c = var == SearchVariant::T1_3 ? 1.0L : sharp_constant(cfg.r, cfg.delta, theorem_of(var), 1);
  const std::size_t m = static_cast<std::size_t>(cfg.pieces);

  SearchResult res;
  res.trace_hash = 14695981039346656037ULL;
  long long evals = 0;
  std::vector<long double> best_theta;
  Num best_num;
  auto record = [&](long double ratio, const Num& w, const std::vector<long double>& theta) {
    res.best_ratio = ratio;
    best_num = w;
    best_theta = theta;
    res.trace.push_back({evals, ratio});
    const double rd = static_cast<double>(ratio);
    res.trace_hash = fnv1a(res.trace_hash, &evals, sizeof evals);
    res.trace_hash = fnv1a(res.trace_hash, &rd, sizeof rd);
  };

  // seeds: equal pieces and power-graded meshes of x^{tau-1}, tau near 1/delta
  std::vector<Num> seeds;
  {
    Num flat;
    for (std::size_t k = 0; k <= m; ++k) flat.x.push_back(static_cast<long double>(k) / m);
    flat.v.assign(m, 1.0L);
    seeds.push_back(flat);
  }
  if (cfg.delta > 1.0L && m > 1) {
    auto graded = [m](long double tau, long double q) {
      Num n;
      n.x.push_back(0.0L);
      for (std::size_t k = m - 1; k >= 1; --k) n.x.push_back(std::pow(q, static_cast<long double>(k)));
      n.x.push_back(1.0L);
      for (std::size_t k = 0; k < m; ++k) n.v.push_back(cell_mass(tau, n.x[k], n.x[k + 1]) / (n.x[k + 1] - n.x[k]));
      return n;
    };
    for (int j = 0; j < 16; ++j) {
      const long double depth = 4.0L * std::exp2(j / 4.0L);
      const long double q = std::exp(-depth / static_cast<long double>(m));
      // smallest tau whose discretization still meets the budget
      long double lo = 1.0L / (cfg.delta + 1.0L), hi = 1.0L - 1e-9L;
      if (constant_of(var, graded(lo, q)) <= cfg.delta) hi = lo;
      for (int it = 0; it < 30 && hi > lo; ++it) {
        const long double mid = (lo + hi) / 2;
        if (constant_of(var, graded(mid, q)) <= cfg.delta)
          hi = mid;
        else
          lo = mid;
      }
      seeds.push_back(graded(hi, q));
    }
  }
  std::vector<long double> seed_ratio(seeds.size());
  std::vector<Num> seed_proj(seeds.size());
  parallel_chunks(seeds.size(), [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      seed_proj[i] = project(var, seeds[i], cfg.delta);
      seed_ratio[i] = ratio_num(var, seed_proj[i], cfg.delta, cfg.r, c);
    }
  });
  for (std::size_t i = 0; i < seeds.size() && evals < cfg.budget; ++i) {
    ++evals;
    if (i == 0 || seed_ratio[i] > res.best_ratio) record(seed_ratio[i], seed_proj[i], encode(seed_proj[i]));
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<long double> theta = best_theta;
  long double current = res.best_ratio;
  long double h = 0.25L;
  const std::size_t dims = m > 1 ? 2 * m : 1;
  while (evals < cfg.budget) {
    bool improved = false;
    for (std::size_t i = 0; i < dims && evals < cfg.budget; ++i) {
      for (long double sign : {1.0L, -1.0L}) {
        if (evals >= cfg.budget) break;
        std::vector<long double> trial = theta;
        trial[i] += sign * h;
        const Num w = project(var, decode(trial, m), cfg.delta);
        const long double f = ratio_num(var, w, cfg.delta, cfg.r, c);
        ++evals;
        if (f > current) {
          current = f;
          theta = encode(w);
          improved = true;
          if (f > res.best_ratio) record(f, w, theta);
          break;
        }
      }
    }
    if (!improved) {
      h /= 2;
      if (h < 1e-6L) {
        // restart from a perturbation of the best point
        theta = best_theta;
        for (auto& t : theta) t += 0.1L * static_cast<long double>(gauss(rng));
        const Num w = project(var, decode(theta, m), cfg.delta);
        theta = encode(w);
        current = ratio_num(var, w, cfg.delta, cfg.r, c);
        ++evals;
        if (current > res.best_ratio) record(current, w, theta);
        h = 0.25L;
      }
    }
  }
  res.evaluations = evals;
  res.witness = to_step(best_num);
  res.witness_constant = constant_of(var, best_num);
  return res;
}

}  // namespace rhilab
