#include <doctest.h>

#include "rhilab/constants.hpp"
#include "rhilab/corpus.hpp"
#include "rhilab/errors.hpp"

using namespace rhilab;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

StepWeight up() { return StepWeight({q("0"), q("1/2"), q("1")}, {q("1"), q("3")}); }
StepWeight down() { return StepWeight({q("0"), q("1/2"), q("1")}, {q("3"), q("1")}); }

}  // namespace

// reference values: tests/oracles/oracles.py

TEST_CASE("A1 constants are exact") {
  const ConstantReport a = a1_constant(up());
  CHECK(a.value.is_exact());
  CHECK(*a.value.exact == q("3"));
  CHECK_FALSE(a.is_lower_bound);
  CHECK(*a1_plus_constant(up()).value.exact == q("1"));
  CHECK(*a1_plus_constant(down()).value.exact == q("3"));
  CHECK(a1_constant_fast(up()) == doctest::Approx(3.0));
  CHECK(a1_plus_constant_fast(down()) == doctest::Approx(3.0));
}

TEST_CASE("constant weights give 1 for every kind") {
  const StepWeight c = StepWeight::constant(Interval(q("0"), q("2")), q("5"));
  const auto g = RefinementGrid::for_weight(c, 4);
  CHECK(*a1_constant(c).value.exact == q("1"));
  CHECK(*a1_plus_constant(c).value.exact == q("1"));
  CHECK(fujii_wilson_constant(c, g).value.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fujii_wilson_plus_constant(c, g).value.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(khrushchev_constant(c, g).value.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ap_constant(c, 2.0L, g).value.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gurov_reshetnyak(c, g).value.value == doctest::Approx(0.0));
}

TEST_CASE("A2 of the two-step weight") {
  const ConstantReport r = ap_constant(up(), 2.0L, RefinementGrid::for_weight(up(), 4));
  CHECK(r.is_lower_bound);
  CHECK(r.value.value == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("Fujii-Wilson lower bounds approach the supremum") {
  const long double sup = 1.46305551336554885740L;
  long double prev = 0.0L;
  for (int depth = 2; depth <= 10; depth += 2) {
    const ConstantReport r = fujii_wilson_constant(up(), RefinementGrid::for_weight(up(), depth));
    CHECK(r.is_lower_bound);
    CHECK(r.refinement_depth == depth);
    CHECK(r.value.value >= prev);
    CHECK(r.value.value <= sup * (1 + 1e-12L));
    prev = r.value.value;
  }
  CHECK(prev == doctest::Approx(static_cast<double>(sup)).epsilon(1e-9));
  const Real whole = fujii_wilson_functional(up(), up().support());
  CHECK(whole.value == doctest::Approx(1.346573590279972654L).epsilon(1e-15));
}

TEST_CASE("Khrushchev and Gurov-Reshetnyak lower bounds") {
  const auto g = RefinementGrid::for_weight(up(), 10);
  const long double kh = khrushchev_constant(up(), g).value.value;
  CHECK(kh <= 1.159983171026548649L * (1 + 1e-12L));
  CHECK(kh == doctest::Approx(1.159983171026548649L).epsilon(1e-5));
  const long double gr = gurov_reshetnyak(up(), g).value.value;
  CHECK(gr <= 0.5358983848622454129L * (1 + 1e-12L));
  CHECK(gr == doctest::Approx(0.5358983848622454129L).epsilon(1e-5));
  CHECK(gurov_reshetnyak_functional(up(), up().support()) == q("1/2"));
}

TEST_CASE("constants are nondecreasing in depth on random weights") {
  for (const auto& w : corpus::step_corpus(41, 60)) {
    const auto g4 = RefinementGrid::for_weight(w, 3);
    const auto g6 = g4.refined(2);
    CHECK(fujii_wilson_constant(w, g4).value.value <= fujii_wilson_constant(w, g6).value.value);
    CHECK(khrushchev_constant(w, g4).value.value <= khrushchev_constant(w, g6).value.value);
    CHECK(ap_constant(w, 3.0L, g4).value.value <= ap_constant(w, 3.0L, g6).value.value);
    const long double fw = fujii_wilson_constant(w, g6).value.value;
    CHECK(fw >= 1.0L);
    CHECK(fw <= a1_constant_fast(w) * (1 + 1e-12L));
    CHECK(fujii_wilson_plus_constant(w, g6).value.value >= 1.0L);
  }
}

TEST_CASE("grid points nest") {
  const RefinementGrid g = RefinementGrid::for_weight(up(), 2);
  CHECK(g.points().size() == 9);
  const RefinementGrid h = g.refined();
  for (const auto& x : g.points()) CHECK(std::find(h.points().begin(), h.points().end(), x) != h.points().end());
}

TEST_CASE("constant errors") {
  CHECK_THROWS_AS(ap_constant(up(), 1.0L, RefinementGrid::for_weight(up(), 2)), DomainError);
  CHECK_THROWS_AS(RefinementGrid({q("0"), q("1")}, -1), DomainError);
}
