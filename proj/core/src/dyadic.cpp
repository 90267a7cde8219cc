#include "rhilab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rhilab/errors.hpp"
#include "rhilab/rhi.hpp"

namespace rhilab {

DyadicWeight::DyadicWeight(int dim, Cube cube, int depth, std::vector<Rational> cells)
    : dim_(dim), cube_(std::move(cube)), depth_(depth), cells_(std::move(cells)) {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (cube_.dimension() != dim) throw DomainError("cube dimension does not match");
  if (depth < 0) throw DomainError("depth must be >= 0");
  if (static_cast<long long>(dim) * depth > 30) throw DomainError("grid too large (n*L > 30)");
  const std::size_t expected = std::size_t{1} << (dim * depth);
  if (cells_.size() != expected)
    throw DomainError("expected " + std::to_string(expected) + " cells, got " + std::to_string(cells_.size()));
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (cells_[k].sign() <= 0) throw DomainError("cell " + std::to_string(k) + " is not positive");
}

Cube to_cube(const DyadicWeight& dw, const DyadicCube& c) {
  if (static_cast<int>(c.index.size()) != dw.dim()) throw DomainError("cube index has wrong dimension");
  const Rational side = dw.cube().side() / Rational(1LL << c.level);
  std::vector<Rational> lo;
  for (int d = 0; d < dw.dim(); ++d) lo.push_back(dw.cube().lo()[d] + side * Rational(c.index[d]));
  return Cube(std::move(lo), side);
}

namespace {

// Integer-scaled dyadic tree. With D the common denominator of the cells and
// N = 2^{nL} cells, every average times D*N is an integer:
//   scaled average of a level-l cube = (sum of D*cell over the cube) * 2^{n l}.
class Tree {
 public:
  explicit Tree(const DyadicWeight& dw) : n_(dw.dim()), L_(dw.depth()) {
    mpz_class den = 1;
    for (const auto& c : dw.cells()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
    den_ = den;
    sums_.resize(L_ + 1);
    sums_[L_].reserve(dw.cell_count());
    for (const auto& c : dw.cells()) sums_[L_].push_back(c.numerator() * (den / c.denominator()));
    for (int l = L_ - 1; l >= 0; --l) {
      sums_[l].assign(count(l), mpz_class(0));
      for (std::size_t j = 0; j < count(l + 1); ++j) sums_[l][parent(l + 1, j)] += sums_[l + 1][j];
    }
    avg_.resize(L_ + 1);
    for (int l = 0; l <= L_; ++l) {
      avg_[l].resize(count(l));
      for (std::size_t j = 0; j < count(l); ++j) avg_[l][j] = sums_[l][j] << (n_ * l);
    }
  }

  int n() const { return n_; }
  int depth() const { return L_; }
  std::size_t count(int l) const { return std::size_t{1} << (n_ * l); }
  const mpz_class& avg(int l, std::size_t j) const { return avg_[l][j]; }
  const mpz_class& sum(int l, std::size_t j) const { return sums_[l][j]; }
  // scale = D * 2^{nL}
  Rational unscale(const mpz_class& x) const { return Rational(mpq_class(x, den_ << (n_ * L_))); }
  Rational unscale(const Rational& x) const { return x / Rational(mpq_class(den_ << (n_ * L_))); }
  Rational scale(const Rational& x) const { return x * Rational(mpq_class(den_ << (n_ * L_))); }

  std::size_t parent(int l, std::size_t j) const {
    // per-axis digits of width l, drop the lowest bit of each
    std::size_t out = 0;
    const std::size_t mask = (std::size_t{1} << l) - 1;
    for (int d = 0; d < n_; ++d) {
      const std::size_t axis = (j >> (l * (n_ - 1 - d))) & mask;
      out |= (axis >> 1) << ((l - 1) * (n_ - 1 - d));
    }
    return out;
  }
  std::size_t child(int l, std::size_t j, unsigned corner) const {
    std::size_t out = 0;
    const std::size_t mask = (std::size_t{1} << l) - 1;
    for (int d = 0; d < n_; ++d) {
      const std::size_t axis = (j >> (l * (n_ - 1 - d))) & mask;
      const std::size_t bit = (corner >> (n_ - 1 - d)) & 1U;
      out |= ((axis << 1) | bit) << ((l + 1) * (n_ - 1 - d));
    }
    return out;
  }
  std::size_t flat(const DyadicCube& c) const {
    std::size_t out = 0;
    for (int d = 0; d < n_; ++d) out |= static_cast<std::size_t>(c.index[d]) << (c.level * (n_ - 1 - d));
    return out;
  }
  DyadicCube unflat(int l, std::size_t j) const {
    DyadicCube c{l, std::vector<std::uint32_t>(n_)};
    const std::size_t mask = (std::size_t{1} << l) - 1;
    for (int d = 0; d < n_; ++d) c.index[d] = static_cast<std::uint32_t>((j >> (l * (n_ - 1 - d))) & mask);
    return c;
  }

  // Scaled M_S values over the cells of S = (l, j), in S-local row-major order,
  // starting from a running maximum `floor` (nullptr for none).
  void maximal(int l, std::size_t j, const mpz_class* floor, std::vector<mpz_class>& out) const {
    out.assign(std::size_t{1} << (n_ * (L_ - l)), mpz_class(0));
    fill(l, j, floor, l, 0, out);
  }

  // Sum over the cells of S of scaled M_S.
  mpz_class maximal_sum(int l, std::size_t j) const {
    mpz_class total = 0;
    accumulate(l, j, nullptr, total);
    return total;
  }

 private:
  void accumulate(int l, std::size_t j, const mpz_class* floor, mpz_class& total) const {
    const mpz_class* m = (floor && *floor > avg_[l][j]) ? floor : &avg_[l][j];
    if (l == L_) {
      total += *m;
      return;
    }
    for (unsigned corner = 0; corner < (1U << n_); ++corner) accumulate(l + 1, child(l, j, corner), m, total);
  }

  void fill(int l, std::size_t j, const mpz_class* floor, int top, std::size_t local, std::vector<mpz_class>& out) const {
    const mpz_class* m = (floor && *floor > avg_[l][j]) ? floor : &avg_[l][j];
    if (l == L_) {
      out[local] = *m;
      return;
    }
    const int rel = l - top;  // local level
    const std::size_t mask = (std::size_t{1} << rel) - 1;
    for (unsigned corner = 0; corner < (1U << n_); ++corner) {
      std::size_t next = 0;
      for (int d = 0; d < n_; ++d) {
        const std::size_t axis = rel == 0 ? 0 : (local >> (rel * (n_ - 1 - d))) & mask;
        const std::size_t bit = (corner >> (n_ - 1 - d)) & 1U;
        next |= ((axis << 1) | bit) << ((rel + 1) * (n_ - 1 - d));
      }
      fill(l + 1, child(l, j, corner), m, top, next, out);
    }
  }

  int n_;
  int L_;
  mpz_class den_;
  std::vector<std::vector<mpz_class>> sums_;
  std::vector<std::vector<mpz_class>> avg_;
};

std::vector<Rational> unscale_all(const Tree& t, const std::vector<mpz_class>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(t.unscale(x));
  return out;
}

struct FwResult {
  Rational value;
  int level = 0;
  std::size_t index = 0;
};

FwResult fw(const Tree& t) {
  FwResult best{Rational(1), 0, 0};
  mpz_class best_num = 1, best_den = 1;
  for (int l = 0; l <= t.depth(); ++l) {
    for (std::size_t j = 0; j < t.count(l); ++j) {
      const mpz_class num = t.maximal_sum(l, j);
      const mpz_class den = t.sum(l, j) << (t.n() * t.depth());
      if (num * best_den > best_num * den) {
        best_num = num;
        best_den = den;
        best.level = l;
        best.index = j;
      }
    }
  }
  best.value = Rational(mpq_class(best_num, best_den));
  return best;
}

Real mean_power(const std::vector<Rational>& v, long double r) {
  if (r == 1.0L) {
    Rational s(0);
    for (const auto& x : v) s += x;
    return Real::from(s / Rational(static_cast<long long>(v.size())));
  }
  long double s = 0.0L;
  for (const auto& x : v) s += std::pow(x.to_long_double(), r);
  return Real::approx(s / static_cast<long double>(v.size()));
}

}  // namespace

DyadicWeight local_dyadic_maximal(const DyadicWeight& dw) {
  const Tree t(dw);
  std::vector<mpz_class> m;
  t.maximal(0, 0, nullptr, m);
  return DyadicWeight(dw.dim(), dw.cube(), dw.depth(), unscale_all(t, m));
}

std::vector<Rational> local_dyadic_maximal(const DyadicWeight& dw, const DyadicCube& s) {
  if (s.level < 0 || s.level > dw.depth()) throw DomainError("subcube level out of range");
  const Tree t(dw);
  std::vector<mpz_class> m;
  t.maximal(s.level, t.flat(s), nullptr, m);
  return unscale_all(t, m);
}

Rational dyadic_average(const DyadicWeight& dw, const DyadicCube& s) {
  const Tree t(dw);
  return t.unscale(t.avg(s.level, t.flat(s)));
}

ConstantReport dyadic_fujii_wilson(const DyadicWeight& dw) {
  const Tree t(dw);
  const FwResult r = fw(t);
  ConstantReport rep;
  rep.kind = ConstantKind::DyadicFujiiWilson;
  rep.value = Real::from(r.value);
  rep.is_lower_bound = false;
  rep.refinement_depth = dw.depth();
  rep.witness = to_cube(dw, t.unflat(r.level, r.index));
  return rep;
}

CzForest cz_decomposition(const DyadicWeight& dw, const Rational& lambda) {
  if (lambda.sign() <= 0) throw DomainError("level must be positive");
  const Tree t(dw);
  const Rational scaled = t.scale(lambda);
  CzForest out{lambda, {}};
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  std::vector<std::pair<int, std::size_t>> found;
  while (!stack.empty()) {
    auto [l, j] = stack.back();
    stack.pop_back();
    if (Rational(mpq_class(t.avg(l, j))) > scaled) {
      found.emplace_back(l, j);
      continue;
    }
    if (l == t.depth()) continue;
    for (unsigned c = 0; c < (1U << t.n()); ++c) stack.emplace_back(l + 1, t.child(l, j, c));
  }
  std::sort(found.begin(), found.end());
  for (auto [l, j] : found) out.cubes.push_back(t.unflat(l, j));
  return out;
}

std::vector<Rational> critical_levels(const DyadicWeight& dw) {
  const Tree t(dw);
  std::set<mpz_class> values;
  for (int l = 0; l <= t.depth(); ++l)
    for (std::size_t j = 0; j < t.count(l); ++j) values.insert(t.avg(l, j));
  std::vector<Rational> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(t.unscale(v));
  return out;
}

Rational superlevel_threshold(const DyadicWeight& dw, const Rational& delta) {
  const Tree t(dw);
  return t.unscale(t.maximal_sum(0, 0)) / (Rational(static_cast<long long>(t.count(t.depth()))) * delta);
}

Verdict verify_superlevel_lemma(const DyadicWeight& dw, const std::vector<Rational>& lambdas) {
  const Tree t(dw);
  const FwResult f = fw(t);
  const Rational& delta = f.value;
  const Rational c = superlevel_constant(delta, dw.dim());
  const Rational lambda0 = t.unscale(t.maximal_sum(0, 0)) / (Rational(static_cast<long long>(t.count(t.depth()))) * delta);

  std::vector<mpz_class> m;
  t.maximal(0, 0, nullptr, m);
  std::sort(m.begin(), m.end(), std::greater<>());
  std::vector<mpz_class> prefix(m.size() + 1, mpz_class(0));
  for (std::size_t k = 0; k < m.size(); ++k) prefix[k + 1] = prefix[k] + m[k];

  std::vector<Rational> levels;
  if (lambdas.empty()) {
    for (auto& l : critical_levels(dw))
      if (l >= lambda0) levels.push_back(l);
  } else {
    levels = lambdas;
  }

  const Rational cell = dw.cube().volume() / Rational(static_cast<long long>(m.size()));
  VerdictParams vp;
  vp.delta = delta.to_long_double();
  vp.delta_exact = delta;
  vp.n = dw.dim();
  std::optional<Verdict> worst;
  for (const auto& lambda : levels) {
    if (lambda.sign() <= 0) throw DomainError("levels must be positive");
    const Rational scaled = t.scale(lambda);
    // number of cells with scaled M > scaled lambda
    const std::size_t k = static_cast<std::size_t>(
        std::partition_point(m.begin(), m.end(), [&](const mpz_class& x) { return Rational(mpq_class(x)) > scaled; }) -
        m.begin());
    const Rational lhs = t.unscale(prefix[k]) * cell;
    const Rational rhs = c * lambda * Rational(static_cast<long long>(k)) * cell;
    if (k == 0) continue;  // E_lambda empty: 0 <= 0
    Verdict v = make_verdict(TheoremId::L4_1, vp, Real::from(lhs), Real::from(rhs), lambda, "exact");
    if (!worst || (!v.holds && worst->holds) || (v.holds == worst->holds && *v.ratio.exact > *worst->ratio.exact))
      worst = v;
  }
  if (!worst)
    worst = make_verdict(TheoremId::L4_1, vp, Real::from(Rational(0)), Real::from(Rational(0)), lambda0, "exact");
  return *worst;
}

Verdict verify_dyadic_rhi(const DyadicWeight& dw, long double r, TheoremId which) {
  if (which != TheoremId::T4_2 && which != TheoremId::T1_1)
    throw DomainError("dyadic reverse Hoelder verifier covers t4.2 and t1.1 only");
  const Tree t(dw);
  const FwResult f = fw(t);
  const long double delta = f.value.to_long_double();
  const long double c = sharp_constant(r, delta, which, dw.dim());  // throws RangeError outside the range
  std::vector<Rational> values;
  if (which == TheoremId::T4_2) {
    std::vector<mpz_class> m;
    t.maximal(0, 0, nullptr, m);
    values = unscale_all(t, m);
  } else {
    values = dw.cells();
  }
  const Real lhs = mean_power(values, r);
  const Real mean = mean_power(values, 1.0L);
  Real rhs;
  if (r == 1.0L && which == TheoremId::T4_2)
    rhs = mean;
  else if (r == 1.0L)
    rhs = Real::from(f.value * *mean.exact);
  else
    rhs = Real::approx(c * std::pow(mean.value, r));
  VerdictParams vp;
  vp.r = r;
  vp.delta = delta;
  vp.delta_exact = f.value;
  vp.n = dw.dim();
  return make_verdict(which, vp, lhs, rhs, dw.cube(), "exact");
}

bool flatness_check(const DyadicWeight& dw) {
  const Tree t(dw);
  return fw(t).value == Rational(1);
}

}  // namespace rhilab
