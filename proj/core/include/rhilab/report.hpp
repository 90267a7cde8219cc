#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rhilab/geometry.hpp"
#include "rhilab/rational.hpp"
#include "rhilab/real.hpp"

namespace rhilab {

enum class ConstantKind {
  A1,
  A1plus,
  Ap,
  FujiiWilson,
  FujiiWilsonPlus,
  Khrushchev,
  GurovReshetnyak,
  DyadicFujiiWilson,
  MuStrongFujiiWilson,
};

std::string_view to_string(ConstantKind kind);

/// Where a constant or ratio is attained: an interval, a cube, or a level lambda.
using Witness = std::variant<std::monostate, Interval, Cube, Rational>;

struct ConstantReport {
  ConstantKind kind = ConstantKind::A1;
  Real value;
  bool is_lower_bound = false;
  int refinement_depth = 0;
  Witness witness;
};

enum class TheoremId {
  T1_1,
  T1_2,
  T1_2_COR,
  T1_3,
  T3_1_FIRST,
  T3_1_SECOND,
  T3_3,
  T3_3_COR_FIRST,
  T3_3_COR_SECOND,
  T_AINFTY_ENDPOINT,
  T_ONESIDED_ENDPOINT_A1,
  T_ONESIDED_ENDPOINT_AINFTY,
  L2_2,
  L_REARINFTY,
  WIK_BOUND,
  EMB_COR_I,
  EMB_COR_II,
  T4_2,
  COR3_5,
  COR4_3,
  BSW,   // strong reverse Hoelder form for A1 weights with the two-sided constant
  L4_1,  // dyadic superlevel estimate with c_n(delta) = delta + (2^n - 1)(delta - 1)
};

/// Short CLI name, e.g. "t3.1a".
std::string_view to_string(TheoremId id);
/// Accepts the short name or the enumerator name (case-insensitive).
TheoremId parse_theorem(std::string_view text);
const std::vector<TheoremId>& all_theorems();

struct VerdictParams {
  std::optional<long double> r;
  std::optional<long double> delta;
  std::optional<Rational> delta_exact;
  std::optional<long double> tau;
  std::optional<int> n;
  std::optional<int> depth;
};

struct Verdict {
  TheoremId theorem = TheoremId::T1_2;
  VerdictParams params;
  Real lhs;
  Real rhs;
  Real ratio;
  bool holds = false;
  bool exact = false;
  Witness witness;
  std::string delta_source;  // "exact", "grid lower bound depth D", "closed form", ...
};

/// Fills ratio, exact and holds from lhs and rhs under the global tolerance.
Verdict make_verdict(TheoremId id, VerdictParams params, Real lhs, Real rhs, Witness witness = {},
                     std::string delta_source = {});

}  // namespace rhilab
