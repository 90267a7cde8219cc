#include <doctest.h>

#include <cmath>

#include "rhilab/errors.hpp"
#include "rhilab/geometry.hpp"
#include "rhilab/rational.hpp"
#include "rhilab/real.hpp"
#include "rhilab/report.hpp"
#include "rhilab/step_weight.hpp"

using namespace rhilab;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

StepWeight two_step() { return StepWeight({q("0"), q("1/2"), q("1")}, {q("1"), q("3")}); }

}  // namespace

TEST_CASE("rational parse and print") {
  CHECK(q("6/4").str() == "3/2");
  CHECK(q("-3").str() == "-3");
  CHECK(q("0/5").str() == "0");
  CHECK_THROWS_AS(q("4/-6"), ParseError);
  CHECK_THROWS_AS(q("1/0"), ParseError);
  CHECK_THROWS_AS(q("x"), ParseError);
  CHECK_THROWS_AS(q(""), ParseError);
  CHECK_THROWS_AS(q("1/2/3"), ParseError);
}

TEST_CASE("rational arithmetic stays exact") {
  Rational acc(0);
  for (int k = 1; k <= 50; ++k) acc += Rational(1, k * (k + 1));
  CHECK(acc == Rational(50, 51));
  CHECK(q("1/3") + q("1/6") == q("1/2"));
  CHECK(q("2/3").pow(3) == q("8/27"));
  CHECK(q("2/3").pow(-2) == q("9/4"));
  CHECK(q("-5/7").abs() == q("5/7"));
  CHECK(Rational::from_long_double(0.375L) == q("3/8"));
  CHECK(q("1/3") < q("1/2"));
}

TEST_CASE("interval and cube invariants") {
  CHECK_THROWS_AS(Interval(q("1"), q("1")), DomainError);
  CHECK_THROWS_AS(Interval(q("2"), q("1")), DomainError);
  const Interval i(q("1/4"), q("3/4"));
  CHECK(i.length() == q("1/2"));
  CHECK(i.contains(Interval(q("1/3"), q("1/2"))));
  CHECK_FALSE(i.contains(q("1/4")));
  CHECK(i.contains_closed(q("1/4")));
  const Cube c({q("0"), q("1")}, q("1/2"));
  CHECK(c.volume() == q("1/4"));
  CHECK(c.axis(1) == Interval(q("1"), q("3/2")));
  CHECK_THROWS_AS(Cube({q("0")}, q("0")), DomainError);
}

TEST_CASE("step weight validation") {
  CHECK_THROWS_AS(StepWeight({q("0"), q("1")}, {q("0")}), DomainError);
  CHECK_THROWS_AS(StepWeight({q("0"), q("1")}, {q("-1")}), DomainError);
  CHECK_THROWS_AS(StepWeight({q("0"), q("1"), q("1")}, {q("1"), q("2")}), DomainError);
  CHECK_THROWS_AS(StepWeight({q("0"), q("1")}, {q("1"), q("2")}), DomainError);
  CHECK_THROWS_AS(StepWeight({q("0")}, {}), DomainError);
}

TEST_CASE("average") {
  const StepWeight w = two_step();
  CHECK(average(w, Interval(q("0"), q("1"))) == q("2"));
  CHECK(average(w, Interval(q("1/4"), q("3/4"))) == q("2"));
  CHECK(average(w, Interval(q("0"), q("1/4"))) == q("1"));
  CHECK(average(StepWeight::constant(Interval(q("0"), q("5")), q("7/3")), Interval(q("1"), q("2"))) == q("7/3"));
  CHECK_THROWS_AS(average(w, Interval(q("-1"), q("1/2"))), DomainError);
}

TEST_CASE("power average") {
  const StepWeight w = two_step();
  const Interval i(q("0"), q("1"));
  const Real two = power_average(w, i, 2.0L);
  CHECK(two.is_exact());
  CHECK(*two.exact == q("5"));
  const Real inv = power_average(w, i, -1.0L);
  CHECK(*inv.exact == q("2/3"));
  const Real half = power_average(w, i, 1.5L);
  CHECK_FALSE(half.is_exact());
  CHECK(half.value == doctest::Approx((1.0 + std::pow(3.0, 1.5)) / 2).epsilon(1e-15));
  const Real c = power_average(StepWeight::constant(i, q("4")), i, 0.5L);
  CHECK(c.value == doctest::Approx(2.0).epsilon(1e-18));
}

TEST_CASE("restrict") {
  const StepWeight w = two_step();
  const StepWeight r = restrict(w, Interval(q("1/4"), q("3/4")));
  CHECK(r.support() == Interval(q("1/4"), q("3/4")));
  CHECK(r.pieces() == 2);
  CHECK(r.values()[0] == q("1"));
  CHECK(r.values()[1] == q("3"));
  const StepWeight inner = restrict(w, Interval(q("0"), q("1/3")));
  CHECK(inner.pieces() == 1);
  CHECK(inner.mass(inner.support()) == q("1/3"));
  CHECK_THROWS_AS(restrict(w, Interval(q("1/2"), q("2"))), DomainError);
}

TEST_CASE("mass and cumulative") {
  const StepWeight w = two_step();
  CHECK(w.total_mass() == q("2"));
  CHECK(w.cumulative(q("3/4")) == q("5/4"));
  CHECK(w.mass(Interval(q("1/4"), q("3/4"))) == q("1"));
  CHECK(w.max_value() == q("3"));
  CHECK(w.min_value() == q("1"));
  CHECK_FALSE(w.is_constant());
}

TEST_CASE("verdict rule") {
  const TolerancePolicy saved = tolerance();
  set_tolerance({1e-9L});
  const Verdict exact_fail = make_verdict(TheoremId::T1_3, {}, Real::from(q("1000000001/1000000000")), Real::from(q("1")));
  CHECK(exact_fail.exact);
  CHECK_FALSE(exact_fail.holds);
  const Verdict approx = make_verdict(TheoremId::T1_3, {}, Real::approx(1.0L + 5e-10L), Real::from(q("1")));
  CHECK_FALSE(approx.exact);
  CHECK(approx.holds);
  const Verdict approx_fail = make_verdict(TheoremId::T1_3, {}, Real::approx(1.0L + 2e-9L), Real::from(q("1")));
  CHECK_FALSE(approx_fail.holds);
  CHECK(approx_fail.ratio.value == doctest::Approx(1.0 + 2e-9));
  set_tolerance(saved);
}

TEST_CASE("theorem names round trip") {
  for (TheoremId id : all_theorems()) CHECK(parse_theorem(to_string(id)) == id);
  CHECK(parse_theorem("T3_1_FIRST") == TheoremId::T3_1_FIRST);
  CHECK_THROWS_AS(parse_theorem("t9.9"), ParseError);
}
