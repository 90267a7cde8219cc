#include "rhilab/mugrid.hpp"

#include <algorithm>

#include "rhilab/errors.hpp"
#include "rhilab/rhi.hpp"

namespace rhilab {

AtomlessMeasure1D::AtomlessMeasure1D(std::vector<std::pair<Rational, Rational>> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw DomainError("a CDF needs at least two knots");
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    if (!(knots_[k - 1].first < knots_[k].first)) throw DomainError("CDF knots must strictly increase in x");
    if (knots_[k].second < knots_[k - 1].second) throw DomainError("CDF must be nondecreasing");
  }
  if (!(knots_.front().second < knots_.back().second)) throw DomainError("measure has zero total mass");
}

AtomlessMeasure1D AtomlessMeasure1D::lebesgue(const Interval& i) {
  return AtomlessMeasure1D({{i.lo(), Rational(0)}, {i.hi(), i.length()}});
}

Rational AtomlessMeasure1D::cdf(const Rational& x) const {
  if (x <= knots_.front().first) return knots_.front().second;
  if (x >= knots_.back().first) return knots_.back().second;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                   [](const Rational& v, const auto& knot) { return v < knot.first; });
  const auto& [x1, f1] = *it;
  const auto& [x0, f0] = *(it - 1);
  return f0 + (f1 - f0) * (x - x0) / (x1 - x0);
}

Rational AtomlessMeasure1D::leftmost_preimage(const Interval& j, const Rational& target) const {
  if (target < cdf(j.lo()) || target > cdf(j.hi())) throw DomainError("target mass outside the interval's range");
  if (cdf(j.lo()) == target) return j.lo();
  // first knot segment (clipped to J) whose right value reaches the target
  Rational prev_x = j.lo(), prev_f = cdf(j.lo());
  std::vector<Rational> xs;
  for (const auto& [x, f] : knots_)
    if (j.lo() < x && x < j.hi()) xs.push_back(x);
  xs.push_back(j.hi());
  for (const auto& x : xs) {
    const Rational f = cdf(x);
    if (f >= target) return prev_x + (target - prev_f) * (x - prev_x) / (f - prev_f);
    prev_x = x;
    prev_f = f;
  }
  return j.hi();
}

std::vector<Interval> AtomlessMeasure1D::flat_segments(const Interval& j) const {
  std::vector<Rational> xs{j.lo()};
  for (const auto& [x, f] : knots_)
    if (j.lo() < x && x < j.hi()) xs.push_back(x);
  xs.push_back(j.hi());
  std::vector<Interval> out;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (cdf(xs[k]) != cdf(xs[k + 1])) continue;
    if (!out.empty() && out.back().hi() == xs[k])
      out.back() = Interval(out.back().lo(), xs[k + 1]);
    else
      out.emplace_back(xs[k], xs[k + 1]);
  }
  return out;
}

std::vector<Interval> MuDyadicGrid::evaluation_set(int d, std::size_t k) const {
  const Interval leaf = splits_[d][depth_][k];
  std::vector<Interval> out;
  Rational cursor = leaf.lo();
  for (const auto& f : flats_[d]) {
    if (!(f.lo() < leaf.hi() && leaf.lo() < f.hi())) continue;
    const Rational lo = max(f.lo(), leaf.lo()), hi = min(f.hi(), leaf.hi());
    if (cursor < lo) out.emplace_back(cursor, lo);
    cursor = max(cursor, hi);
  }
  if (cursor < leaf.hi()) out.emplace_back(cursor, leaf.hi());
  return out;
}

Box MuDyadicGrid::box(int k, std::size_t j) const {
  if (k < 0 || k > depth_ || j >= box_count(k)) throw DomainError("grid box out of range");
  const int n = dim();
  Box b;
  const std::size_t mask = (std::size_t{1} << k) - 1;
  for (int d = 0; d < n; ++d) b.push_back(splits_[d][k][(j >> (k * (n - 1 - d))) & mask]);
  return b;
}

Rational MuDyadicGrid::box_mass(int k, std::size_t j) const {
  const Box b = box(k, j);
  Rational m(1);
  for (int d = 0; d < dim(); ++d) m *= axes_[d].mass(b[d]);
  return m;
}

MuDyadicGrid build_mu_grid(const std::vector<AtomlessMeasure1D>& measures, const Box& root, int depth) {
  if (measures.empty() || measures.size() != root.size()) throw DomainError("one measure per axis of the root box");
  if (depth < 0 || depth * static_cast<int>(measures.size()) > 24) throw DomainError("grid depth out of range");
  MuDyadicGrid g;
  g.axes_ = measures;
  g.root_ = root;
  g.depth_ = depth;
  for (std::size_t d = 0; d < measures.size(); ++d) {
    const auto& mu = measures[d];
    if (!mu.mass(root[d]).sign()) throw DomainError("root box has zero mass on axis " + std::to_string(d));
    std::vector<std::vector<Interval>> gens{{root[d]}};
    for (int k = 0; k < depth; ++k) {
      std::vector<Interval> next;
      for (const auto& iv : gens.back()) {
        const Rational half = mu.cdf(iv.lo()) + mu.mass(iv) / Rational(2);
        const Rational s = mu.leftmost_preimage(iv, half);
        if (!(iv.lo() < s && s < iv.hi())) throw DomainError("degenerate split");
        next.emplace_back(iv.lo(), s);
        next.emplace_back(s, iv.hi());
      }
      gens.push_back(std::move(next));
    }
    g.splits_.push_back(std::move(gens));
    g.flats_.push_back(mu.flat_segments(root[d]));
  }
  return g;
}

DyadicWeight as_dyadic(const MuDyadicGrid& grid, const MuCellWeight& w) {
  const int n = grid.dim();
  std::vector<Rational> lo(n, Rational(0));
  return DyadicWeight(n, Cube(lo, Rational(1)), grid.depth(), w.values);
}

std::vector<Rational> mu_dyadic_maximal(const MuDyadicGrid& grid, const MuCellWeight& w, const GridBox& s) {
  const DyadicWeight dw = as_dyadic(grid, w);
  if (s.generation < 0 || s.generation > grid.depth() || s.index >= grid.box_count(s.generation))
    throw DomainError("grid box out of range");
  DyadicCube c{s.generation, std::vector<std::uint32_t>(grid.dim())};
  const std::size_t mask = (std::size_t{1} << s.generation) - 1;
  for (int d = 0; d < grid.dim(); ++d)
    c.index[d] = static_cast<std::uint32_t>((s.index >> (s.generation * (grid.dim() - 1 - d))) & mask);
  return local_dyadic_maximal(dw, c);
}

ConstantReport mu_strong_fujii_wilson(const MuDyadicGrid& grid, const MuCellWeight& w) {
  ConstantReport rep = dyadic_fujii_wilson(as_dyadic(grid, w));
  rep.kind = ConstantKind::MuStrongFujiiWilson;
  rep.is_lower_bound = true;
  rep.refinement_depth = grid.depth();
  rep.witness = std::monostate{};
  return rep;
}

Verdict verify_mu_rhi(const MuDyadicGrid& grid, const MuCellWeight& w, long double r) {
  Verdict v = verify_dyadic_rhi(as_dyadic(grid, w), r, TheoremId::T1_1);
  v.theorem = TheoremId::COR4_3;
  v.witness = std::monostate{};
  v.delta_source = "grid lower bound depth " + std::to_string(grid.depth());
  v.params.depth = grid.depth();
  return v;
}

}  // namespace rhilab
