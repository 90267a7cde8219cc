#include <doctest.h>

#include "rhilab/dyadic.hpp"
#include "rhilab/errors.hpp"
#include "rhilab/mugrid.hpp"

using namespace rhilab;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

AtomlessMeasure1D skewed() { return AtomlessMeasure1D({{q("0"), q("0")}, {q("1/4"), q("1/2")}, {q("1"), q("1")}}); }
AtomlessMeasure1D gapped() {
  return AtomlessMeasure1D({{q("0"), q("0")}, {q("1/4"), q("1/2")}, {q("1/2"), q("1/2")}, {q("1"), q("1")}});
}

Box unit_box(int n) { return Box(n, Interval(q("0"), q("1"))); }

}  // namespace

TEST_CASE("measure basics") {
  const AtomlessMeasure1D mu = skewed();
  CHECK(mu.cdf(q("1/8")) == q("1/4"));
  CHECK(mu.cdf(q("5/8")) == q("3/4"));
  CHECK(mu.cdf(q("-3")) == q("0"));
  CHECK(mu.mass(Interval(q("1/8"), q("5/8"))) == q("1/2"));
  CHECK(mu.leftmost_preimage(Interval(q("0"), q("1")), q("1/2")) == q("1/4"));
  const AtomlessMeasure1D leb = AtomlessMeasure1D::lebesgue(Interval(q("2"), q("5")));
  CHECK(leb.mass(Interval(q("3"), q("4"))) == q("1"));
  CHECK_THROWS_AS(AtomlessMeasure1D({{q("0"), q("1")}, {q("1"), q("0")}}), DomainError);
  CHECK_THROWS_AS(AtomlessMeasure1D({{q("0"), q("1")}, {q("1"), q("1")}}), DomainError);
  CHECK_THROWS_AS(AtomlessMeasure1D({{q("0"), q("0")}}), DomainError);
}

TEST_CASE("flat segments and the leftmost tie-break") {
  const AtomlessMeasure1D mu = gapped();
  const auto flats = mu.flat_segments(Interval(q("0"), q("1")));
  REQUIRE(flats.size() == 1);
  CHECK(flats[0] == Interval(q("1/4"), q("1/2")));
  // every point of [1/4, 1/2] has F = 1/2; the split takes the leftmost one
  CHECK(mu.leftmost_preimage(Interval(q("0"), q("1")), q("1/2")) == q("1/4"));
}

TEST_CASE("median splits have equal mass") {
  const MuDyadicGrid g = build_mu_grid({skewed()}, unit_box(1), 3);
  CHECK(g.axis_intervals(0, 1)[0] == Interval(q("0"), q("1/4")));
  CHECK(g.axis_intervals(0, 2)[2] == Interval(q("1/4"), q("5/8")));
  for (int k = 0; k <= 3; ++k)
    for (std::size_t j = 0; j < g.box_count(k); ++j) CHECK(g.box_mass(k, j) == Rational(1, 1 << k));
}

TEST_CASE("product grid") {
  const MuDyadicGrid g = build_mu_grid({skewed(), gapped()}, unit_box(2), 2);
  CHECK(g.box_count(2) == 16);
  CHECK(g.root_mass() == q("1"));
  const Box b = g.box(1, 1);  // axis 0 first half, axis 1 second half
  CHECK(b[0] == Interval(q("0"), q("1/4")));
  CHECK(b[1] == Interval(q("1/4"), q("1")));
  CHECK(g.removable(1).size() == 1);
  CHECK(g.removable(0).empty());
  // leaf containing the flat segment drops it from the evaluation set
  const auto& leaves = g.axis_intervals(1, 2);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    Rational len(0);
    for (const auto& piece : g.evaluation_set(1, k)) len += piece.length();
    const bool has_flat = leaves[k].contains(Interval(q("1/4"), q("1/2")));
    CHECK((len < leaves[k].length()) == has_flat);
  }
  for (std::size_t j = 0; j < 16; ++j) CHECK(g.box_mass(2, j) == q("1/16"));
}

TEST_CASE("grid maximal function and constants") {
  const MuDyadicGrid g = build_mu_grid({skewed(), gapped()}, unit_box(2), 1);
  const MuCellWeight w{{q("1"), q("3"), q("2"), q("5")}};
  CHECK(mu_dyadic_maximal(g, w) == std::vector<Rational>{q("11/4"), q("3"), q("11/4"), q("5")});
  const ConstantReport fw = mu_strong_fujii_wilson(g, w);
  CHECK(fw.kind == ConstantKind::MuStrongFujiiWilson);
  CHECK(fw.is_lower_bound);
  CHECK(*fw.value.exact == q("27/22"));
  const Verdict v = verify_mu_rhi(g, w, 1.05L);
  CHECK(v.theorem == TheoremId::COR4_3);
  CHECK(v.holds);
  const Verdict v1 = verify_mu_rhi(g, w, 1.0L);
  CHECK(v1.exact);
  CHECK(v1.holds);
}

TEST_CASE("grid errors") {
  CHECK_THROWS_AS(build_mu_grid({skewed()}, unit_box(2), 1), DomainError);
  CHECK_THROWS_AS(build_mu_grid({skewed()}, unit_box(1), 25), DomainError);
  const MuDyadicGrid g = build_mu_grid({skewed()}, unit_box(1), 1);
  CHECK_THROWS_AS(g.box(2, 0), DomainError);
  CHECK_THROWS_AS(mu_dyadic_maximal(g, MuCellWeight{{q("1")}}), DomainError);
}
