#include "rhilab/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cctype>
#include <utility>

#include "rhilab/errors.hpp"

namespace rhilab {

namespace {

struct TheoremName {
  TheoremId id;
  std::string_view short_name;
  std::string_view enum_name;
};

constexpr std::array<TheoremName, 22> kTheorems{{
    {TheoremId::T1_1, "t1.1", "T1_1"},
    {TheoremId::T1_2, "t1.2", "T1_2"},
    {TheoremId::T1_2_COR, "t1.2-cor", "T1_2_COR"},
    {TheoremId::T1_3, "t1.3", "T1_3"},
    {TheoremId::T3_1_FIRST, "t3.1a", "T3_1_FIRST"},
    {TheoremId::T3_1_SECOND, "t3.1b", "T3_1_SECOND"},
    {TheoremId::T3_3, "t3.3", "T3_3"},
    {TheoremId::T3_3_COR_FIRST, "t3.3-cor-a", "T3_3_COR_FIRST"},
    {TheoremId::T3_3_COR_SECOND, "t3.3-cor-b", "T3_3_COR_SECOND"},
    {TheoremId::T_AINFTY_ENDPOINT, "t-ainfty-endpoint", "T_AINFTY_ENDPOINT"},
    {TheoremId::T_ONESIDED_ENDPOINT_A1, "t-onesided-endpoint-a1", "T_ONESIDED_ENDPOINT_A1"},
    {TheoremId::T_ONESIDED_ENDPOINT_AINFTY, "t-onesided-endpoint-ainfty", "T_ONESIDED_ENDPOINT_AINFTY"},
    {TheoremId::L2_2, "l2.2", "L2_2"},
    {TheoremId::L_REARINFTY, "l-rearinfty", "L_REARINFTY"},
    {TheoremId::WIK_BOUND, "wik", "WIK_BOUND"},
    {TheoremId::EMB_COR_I, "emb-i", "EMB_COR_I"},
    {TheoremId::EMB_COR_II, "emb-ii", "EMB_COR_II"},
    {TheoremId::T4_2, "t4.2", "T4_2"},
    {TheoremId::COR3_5, "c3.5", "COR3_5"},
    {TheoremId::COR4_3, "c4.3", "COR4_3"},
    {TheoremId::BSW, "bsw", "BSW"},
    {TheoremId::L4_1, "l4.1", "L4_1"},
}};

bool iequal(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view to_string(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::A1: return "A1";
    case ConstantKind::A1plus: return "A1plus";
    case ConstantKind::Ap: return "Ap";
    case ConstantKind::FujiiWilson: return "FujiiWilson";
    case ConstantKind::FujiiWilsonPlus: return "FujiiWilsonPlus";
    case ConstantKind::Khrushchev: return "Khrushchev";
    case ConstantKind::GurovReshetnyak: return "GurovReshetnyak";
    case ConstantKind::DyadicFujiiWilson: return "DyadicFujiiWilson";
    case ConstantKind::MuStrongFujiiWilson: return "MuStrongFujiiWilson";
  }
  return "?";
}

std::string_view to_string(TheoremId id) {
  for (const auto& t : kTheorems)
    if (t.id == id) return t.short_name;
  return "?";
}

TheoremId parse_theorem(std::string_view text) {
  for (const auto& t : kTheorems)
    if (iequal(text, t.short_name) || iequal(text, t.enum_name)) return t.id;
  throw ParseError("unknown theorem id '" + std::string(text) + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& t : kTheorems) v.push_back(t.id);
    return v;
  }();
  return ids;
}

Verdict make_verdict(TheoremId id, VerdictParams params, Real lhs, Real rhs, Witness witness,
                     std::string delta_source) {
  Verdict v;
  v.theorem = id;
  v.params = std::move(params);
  v.exact = lhs.is_exact() && rhs.is_exact();
  if (v.exact && !rhs.exact->is_zero())
    v.ratio = Real::from(*lhs.exact / *rhs.exact);
  else
    v.ratio = Real::approx(rhs.value == 0.0L ? (lhs.value == 0.0L ? 1.0L : HUGE_VALL) : lhs.value / rhs.value);
  v.holds = within_tolerance(lhs, rhs);
  v.lhs = std::move(lhs);
  v.rhs = std::move(rhs);
  v.witness = std::move(witness);
  v.delta_source = std::move(delta_source);
  return v;
}

}  // namespace rhilab
