#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rhilab/corpus.hpp"
#include "rhilab/errors.hpp"
#include "rhilab/maximal.hpp"
#include "rhilab/step_weight.hpp"

using namespace rhilab;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

StepWeight two_step() { return StepWeight({q("0"), q("1/2"), q("1")}, {q("1"), q("3")}); }

// sup of averages over (a,b) containing x, a and b at breakpoints or at x itself
Rational brute_maximal(const StepWeight& w, const Interval& i, Operator op, const Rational& x) {
  std::vector<Rational> left{x}, right{x};
  for (const auto& b : w.breakpoints()) {
    if (!i.contains_closed(b)) continue;
    if (b < x) left.push_back(b);
    if (b > x) right.push_back(b);
  }
  left.push_back(i.lo());
  right.push_back(i.hi());
  Rational best = w.values()[w.piece_index(x)];
  for (const auto& a : left)
    for (const auto& b : right) {
      if (!(a < b)) continue;
      if (op == Operator::Mplus && a != x) continue;
      if (op == Operator::Mminus && b != x) continue;
      best = max(best, w.mass(Interval(a, b)) / (b - a));
    }
  return best;
}

}  // namespace

TEST_CASE("maximal function matches brute force on random weights") {
  const auto weights = corpus::step_corpus(11, 200);
  std::mt19937_64 rng(5);
  for (const auto& w : weights) {
    const Interval i = w.support();
    for (Operator op : {Operator::M, Operator::Mplus, Operator::Mminus}) {
      for (std::size_t k = 0; k < w.pieces(); ++k) {
        const Interval p = w.piece(k);
        std::uniform_int_distribution<int> num(1, 6);
        const Rational x = p.lo() + p.length() * Rational(num(rng), 7);
        CHECK(eval_maximal(w, i, op, x) == brute_maximal(w, i, op, x));
        const MaximalProfile prof = maximal_profile(w, i, op);
        CHECK(prof(x) == brute_maximal(w, i, op, x));
      }
    }
  }
}

TEST_CASE("two-step profile integral is 2 + ln 2") {
  const StepWeight w = two_step();
  const Interval i = w.support();
  const MaximalProfile p = maximal_profile(w, i, Operator::M);
  // oracle: tests/oracles/oracles.py
  CHECK(integrate_profile(p, i).value == doctest::Approx(2.693147180559945309L).epsilon(1e-15));
  CHECK(integrate_profile_power(p, i, 1.0L).value == doctest::Approx(2.693147180559945309L).epsilon(1e-12));
  CHECK(p.sup() == q("3"));
}

TEST_CASE("superlevel set with a wider ambient domain") {
  const StepWeight w = two_step();
  const MaximalProfile p = maximal_profile(w, w.support(), Operator::M, Interval(q("-1"), q("2")));
  const LevelSetDecomposition d = superlevel_set(p, q("5/2"));
  REQUIRE(d.components.size() == 1);
  CHECK(d.components[0].interval == Interval(q("1/3"), q("11/10")));
  // the distribution is measured inside the source interval
  CHECK(profile_distribution(p, q("5/2")) == q("2/3"));
}

TEST_CASE("profile continuity for M") {
  for (const auto& w : corpus::step_corpus(3, 100)) {
    const MaximalProfile p = maximal_profile(w, w.support(), Operator::M);
    for (const auto& seg : p.segments()) {
      if (seg.interval.lo() == w.support().lo()) continue;
      CHECK(p.left_limit(seg.interval.lo()) == p.right_limit(seg.interval.lo()));
    }
  }
}

TEST_CASE("two-sided rising sun flags") {
  for (const auto& w : corpus::step_corpus(17, 100)) {
    const Rational lambda = (w.min_value() + w.max_value()) / Rational(2);
    const RisingSunTwoSided rs = rising_sun_two_sided(w, lambda);
    CHECK(rs.maximality);
    CHECK(rs.endpoint_averages);
    CHECK(rs.localization);
    const Interval s = w.support();
    for (const auto& c : rs.level.components) {
      const Interval in(max(c.interval.lo(), s.lo()), min(c.interval.hi(), s.hi()));
      CHECK(restrict(w, in).max_value() > lambda);
    }
  }
}

TEST_CASE("one-sided rising sun mass identity on interior components") {
  for (const auto& w : corpus::step_corpus(23, 200)) {
    const Rational lambda = (w.min_value() + Rational(2) * w.max_value()) / Rational(3);
    const RisingSunMinus rs = rising_sun_minus(w, w.support(), lambda);
    for (const auto& id : rs.identities)
      if (id.certified) CHECK(id.mass == id.lambda_length);
  }
}

TEST_CASE("rearrangement is nonincreasing and equimeasurable") {
  const StepWeight star = rearrangement(two_step(), Interval(q("0"), q("1")));
  CHECK(star.values()[0] == q("3"));
  CHECK(star.values()[1] == q("1"));
  for (const auto& w : corpus::step_corpus(29, 100)) {
    const StepWeight s = rearrangement(w, w.support());
    CHECK(s.support().lo() == Rational(0));
    CHECK(s.support().length() == w.support().length());
    CHECK(s.total_mass() == w.total_mass());
    for (std::size_t k = 1; k < s.pieces(); ++k) CHECK(s.values()[k] < s.values()[k - 1]);
    CHECK(*power_integral(s, s.support(), 2.0L).exact == *power_integral(w, w.support(), 2.0L).exact);
  }
}

TEST_CASE("weak Lorentz norm of the two-step weight") {
  const StepWeight w = two_step();
  // 3 * 2^(-2/3), oracle: tests/oracles/oracles.py
  CHECK(weak_lorentz_norm(w, w.support(), 1.5L).value == doctest::Approx(1.889881574842309747L).epsilon(1e-15));
  const StepWeight c = StepWeight::constant(Interval(q("0"), q("3")), q("5/2"));
  CHECK(weak_lorentz_norm(c, c.support(), 4.0L).value == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("localized second minus maximal function") {
  const StepWeight c = StepWeight::constant(Interval(q("0"), q("1")), q("2"));
  CHECK(eval_mminus2(c, c.support(), q("1")).value == doctest::Approx(2.0));
  const StepWeight w = two_step();
  const Real m2 = eval_mminus2(w, w.support(), q("1"), 6);
  const Real m1 = Real::from(eval_maximal(w, w.support(), Operator::Mminus, q("1")));
  CHECK(m2.value >= m1.value);
  CHECK(eval_mminus2(w, w.support(), q("1"), 8).value >= m2.value);
}

TEST_CASE("maximal domain errors") {
  const StepWeight w = two_step();
  CHECK_THROWS_AS(eval_maximal(w, w.support(), Operator::M, q("2")), DomainError);
  CHECK_THROWS_AS(maximal_profile(w, Interval(q("0"), q("2")), Operator::M), DomainError);
}
