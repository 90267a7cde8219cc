#pragma once

#include <utility>
#include <vector>

#include "rhilab/dyadic.hpp"
#include "rhilab/geometry.hpp"
#include "rhilab/rational.hpp"
#include "rhilab/report.hpp"

namespace rhilab {

/// Atomless measure on the line through its continuous piecewise-linear CDF.
/// F is constant to the left of the first knot and to the right of the last one.
class AtomlessMeasure1D {
 public:
  explicit AtomlessMeasure1D(std::vector<std::pair<Rational, Rational>> knots);
  static AtomlessMeasure1D lebesgue(const Interval& i);

  const std::vector<std::pair<Rational, Rational>>& knots() const { return knots_; }
  Rational cdf(const Rational& x) const;
  Rational mass(const Interval& j) const { return cdf(j.hi()) - cdf(j.lo()); }
  /// Smallest x in the closure of J with F(x) = target (target between F(J.lo) and F(J.hi)).
  Rational leftmost_preimage(const Interval& j, const Rational& target) const;
  /// Maximal positive-length subintervals of J where F is constant.
  std::vector<Interval> flat_segments(const Interval& j) const;

  friend bool operator==(const AtomlessMeasure1D&, const AtomlessMeasure1D&) = default;

 private:
  std::vector<std::pair<Rational, Rational>> knots_;
};

/// Product box: one interval per axis.
using Box = std::vector<Interval>;

/// Generation-wise equal-mass median splits of a box under a product measure.
class MuDyadicGrid {
 public:
  int dim() const { return static_cast<int>(axes_.size()); }
  int depth() const { return depth_; }
  const std::vector<AtomlessMeasure1D>& axes() const { return axes_; }
  const Box& root() const { return root_; }
  /// The 2^k intervals of axis d at generation k.
  const std::vector<Interval>& axis_intervals(int d, int k) const { return splits_[d][k]; }
  /// Flat (zero-mass) segments of axis d inside the root.
  const std::vector<Interval>& removable(int d) const { return flats_[d]; }
  /// Pieces of the axis-d leaf interval k that carry mass (the leaf minus flat segments).
  std::vector<Interval> evaluation_set(int d, std::size_t k) const;

  std::size_t box_count(int k) const { return std::size_t{1} << (dim() * k); }
  /// Box j of generation k (row-major over per-axis indices, last axis fastest).
  Box box(int k, std::size_t j) const;
  Rational box_mass(int k, std::size_t j) const;
  Rational root_mass() const { return box_mass(0, 0); }

  friend bool operator==(const MuDyadicGrid&, const MuDyadicGrid&) = default;

 private:
  friend MuDyadicGrid build_mu_grid(const std::vector<AtomlessMeasure1D>& measures, const Box& root, int depth);
  std::vector<AtomlessMeasure1D> axes_;
  Box root_;
  int depth_ = 0;
  std::vector<std::vector<std::vector<Interval>>> splits_;  // [axis][generation][k]
  std::vector<std::vector<Interval>> flats_;
};

MuDyadicGrid build_mu_grid(const std::vector<AtomlessMeasure1D>& measures, const Box& root, int depth);

/// Positive value per leaf box of the last generation, row-major.
struct MuCellWeight {
  std::vector<Rational> values;
};

/// Grid box selector: generation and row-major index.
struct GridBox {
  int generation = 0;
  std::size_t index = 0;
};

/// Per-leaf values (leaves of S, S-local row-major) of the localized grid maximal function.
std::vector<Rational> mu_dyadic_maximal(const MuDyadicGrid& grid, const MuCellWeight& w, const GridBox& s = {});
ConstantReport mu_strong_fujii_wilson(const MuDyadicGrid& grid, const MuCellWeight& w);
/// (1/mu(R)) int w^r dmu <= delta (r'-1)/(r'-1-2^n(delta-1)) ((1/mu(R)) int w dmu)^r.
Verdict verify_mu_rhi(const MuDyadicGrid& grid, const MuCellWeight& w, long double r);

/// The leaf values as a dyadic cell array (leaf masses are all equal).
DyadicWeight as_dyadic(const MuDyadicGrid& grid, const MuCellWeight& w);

}  // namespace rhilab
