#pragma once

#include <cstdint>
#include <vector>

#include "rhilab/geometry.hpp"
#include "rhilab/rational.hpp"
#include "rhilab/report.hpp"

namespace rhilab {

/// Cell-constant weight on the dyadic grid of depth L over a cube Q in R^n.
/// Cells are stored row-major over the multi-index (last axis fastest).
class DyadicWeight {
 public:
  DyadicWeight(int dim, Cube cube, int depth, std::vector<Rational> cells);

  int dim() const { return dim_; }
  int depth() const { return depth_; }
  const Cube& cube() const { return cube_; }
  const std::vector<Rational>& cells() const { return cells_; }
  std::size_t cell_count() const { return cells_.size(); }
  /// Cells per axis, 2^L.
  std::size_t side_cells() const { return std::size_t{1} << depth_; }

  friend bool operator==(const DyadicWeight&, const DyadicWeight&) = default;

 private:
  int dim_;
  Cube cube_;
  int depth_;
  std::vector<Rational> cells_;
};

/// A dyadic subcube: generation `level` and per-axis index in [0, 2^level).
struct DyadicCube {
  int level = 0;
  std::vector<std::uint32_t> index;

  friend bool operator==(const DyadicCube&, const DyadicCube&) = default;
};

/// Geometric cube of a dyadic subcube of dw.cube().
Cube to_cube(const DyadicWeight& dw, const DyadicCube& c);

struct CzForest {
  Rational lambda;
  std::vector<DyadicCube> cubes;
};

/// Cellwise M_Q(w 1_Q): maximum of the averages along each cell's ancestor chain.
DyadicWeight local_dyadic_maximal(const DyadicWeight& dw);
/// Cellwise M_S(w 1_S) over the cells of the dyadic subcube S (returned with S's cells, row-major).
std::vector<Rational> local_dyadic_maximal(const DyadicWeight& dw, const DyadicCube& s);

/// Average of w over a dyadic subcube.
Rational dyadic_average(const DyadicWeight& dw, const DyadicCube& s);

/// Exact max over dyadic subcubes S of (1/w(S)) * integral over S of M_S(w 1_S).
ConstantReport dyadic_fujii_wilson(const DyadicWeight& dw);

/// Maximal dyadic cubes with average > lambda.
CzForest cz_decomposition(const DyadicWeight& dw, const Rational& lambda);

/// Lemma-type superlevel estimate M_Q(w 1_Q)(E_lambda) <= c_n(delta) lambda |E_lambda|.
/// An empty list means every critical level >= lambda0. The verdict carries the worst
/// ratio lhs/rhs and its level.
Verdict verify_superlevel_lemma(const DyadicWeight& dw, const std::vector<Rational>& lambdas = {});

/// Distinct averages of all dyadic subcubes, increasing.
std::vector<Rational> critical_levels(const DyadicWeight& dw);
/// lambda0 = (integral of M_Q(w 1_Q))/(delta |Q|).
Rational superlevel_threshold(const DyadicWeight& dw, const Rational& delta);

/// which is T4_2 or T1_1 (dyadic model).
Verdict verify_dyadic_rhi(const DyadicWeight& dw, long double r, TheoremId which);

/// dyadic_fujii_wilson(dw) == 1.
bool flatness_check(const DyadicWeight& dw);

}  // namespace rhilab
