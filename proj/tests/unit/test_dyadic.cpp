#include <doctest.h>

#include <random>

#include "rhilab/corpus.hpp"
#include "rhilab/dyadic.hpp"
#include "rhilab/errors.hpp"
#include "rhilab/rhi.hpp"

using namespace rhilab;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

DyadicWeight unit(int n, int depth, std::vector<Rational> cells) {
  return DyadicWeight(n, Cube(std::vector<Rational>(n, Rational(0)), Rational(1)), depth, std::move(cells));
}

std::vector<std::uint32_t> multi_index(std::size_t k, int n, int depth) {
  std::vector<std::uint32_t> idx(n);
  const std::size_t mask = (std::size_t{1} << depth) - 1;
  for (int d = n - 1; d >= 0; --d) {
    idx[d] = static_cast<std::uint32_t>(k & mask);
    k >>= depth;
  }
  return idx;
}

bool inside(const std::vector<std::uint32_t>& cell, int depth, const DyadicCube& s) {
  for (std::size_t d = 0; d < cell.size(); ++d)
    if ((cell[d] >> (depth - s.level)) != s.index[d]) return false;
  return true;
}

Rational brute_average(const DyadicWeight& dw, const DyadicCube& s) {
  Rational sum(0);
  long count = 0;
  for (std::size_t k = 0; k < dw.cell_count(); ++k)
    if (inside(multi_index(k, dw.dim(), dw.depth()), dw.depth(), s)) {
      sum += dw.cells()[k];
      ++count;
    }
  return sum / Rational(count);
}

DyadicCube ancestor(const std::vector<std::uint32_t>& cell, int depth, int level) {
  DyadicCube c{level, {}};
  for (auto i : cell) c.index.push_back(i >> (depth - level));
  return c;
}

std::vector<DyadicCube> all_cubes(int n, int depth) {
  std::vector<DyadicCube> out;
  for (int level = 0; level <= depth; ++level)
    for (std::size_t k = 0; k < (std::size_t{1} << (n * level)); ++k) out.push_back({level, multi_index(k, n, level)});
  return out;
}

Rational brute_fw(const DyadicWeight& dw) {
  Rational best(1);
  for (const auto& s : all_cubes(dw.dim(), dw.depth())) {
    Rational num(0), den(0);
    for (std::size_t k = 0; k < dw.cell_count(); ++k) {
      const auto cell = multi_index(k, dw.dim(), dw.depth());
      if (!inside(cell, dw.depth(), s)) continue;
      Rational m = dw.cells()[k];
      for (int level = s.level; level < dw.depth(); ++level) m = max(m, brute_average(dw, ancestor(cell, dw.depth(), level)));
      num += m;
      den += dw.cells()[k];
    }
    best = max(best, num / den);
  }
  return best;
}

}  // namespace

// reference values: tests/oracles/oracles.py

TEST_CASE("worked dyadic values") {
  CHECK(*dyadic_fujii_wilson(unit(1, 1, {q("1"), q("3")})).value.exact == q("5/4"));
  CHECK(*dyadic_fujii_wilson(unit(2, 1, {q("1"), q("3"), q("2"), q("5")})).value.exact == q("27/22"));
  const DyadicWeight m = local_dyadic_maximal(unit(2, 1, {q("1"), q("3"), q("2"), q("5")}));
  CHECK(m.cells() == std::vector<Rational>{q("11/4"), q("3"), q("11/4"), q("5")});
}

TEST_CASE("local maximal function and FW against brute force") {
  const auto weights = corpus::dyadic_corpus(7, 60, {1, 2, 3}, 2, 9);
  for (const auto& dw : weights) {
    const DyadicWeight m = local_dyadic_maximal(dw);
    for (std::size_t k = 0; k < dw.cell_count(); ++k) {
      const auto cell = multi_index(k, dw.dim(), dw.depth());
      Rational expect = dw.cells()[k];
      for (int level = 0; level < dw.depth(); ++level)
        expect = max(expect, brute_average(dw, ancestor(cell, dw.depth(), level)));
      CHECK(m.cells()[k] == expect);
    }
    const ConstantReport fw = dyadic_fujii_wilson(dw);
    CHECK(fw.value.is_exact());
    CHECK(*fw.value.exact == brute_fw(dw));
  }
}

TEST_CASE("localized maximal function on a subcube") {
  const DyadicWeight dw = unit(1, 2, {q("1"), q("2"), q("4"), q("8")});
  const auto right = local_dyadic_maximal(dw, DyadicCube{1, {1}});
  CHECK(right == std::vector<Rational>{q("6"), q("8")});
  CHECK(dyadic_average(dw, DyadicCube{1, {0}}) == q("3/2"));
  CHECK(to_cube(dw, DyadicCube{2, {3}}) == Cube({q("3/4")}, q("1/4")));
}

TEST_CASE("Calderon-Zygmund cubes are maximal") {
  for (const auto& dw : corpus::dyadic_corpus(13, 60, {1, 2}, 3, 16)) {
    const auto levels = critical_levels(dw);
    for (const auto& lambda : levels) {
      const CzForest f = cz_decomposition(dw, lambda);
      for (const auto& c : f.cubes) {
        CHECK(brute_average(dw, c) > lambda);
        if (c.level > 0) {
          DyadicCube parent{c.level - 1, {}};
          for (auto i : c.index) parent.index.push_back(i >> 1);
          CHECK(brute_average(dw, parent) <= lambda);
        }
      }
      // every cell with a high ancestor lies in exactly one chosen cube
      for (std::size_t k = 0; k < dw.cell_count(); ++k) {
        const auto cell = multi_index(k, dw.dim(), dw.depth());
        int hits = 0;
        for (const auto& c : f.cubes) hits += inside(cell, dw.depth(), c);
        bool high = false;
        for (int level = 0; level <= dw.depth(); ++level)
          high = high || brute_average(dw, ancestor(cell, dw.depth(), level)) > lambda;
        CHECK(hits == (high ? 1 : 0));
      }
    }
  }
}

TEST_CASE("critical levels are the distinct subcube averages") {
  const DyadicWeight dw = unit(1, 2, {q("1"), q("3"), q("3"), q("1")});
  CHECK(critical_levels(dw) == std::vector<Rational>{q("1"), q("2"), q("3")});
}

TEST_CASE("superlevel lemma: critical levels dominate intermediate ones") {
  std::mt19937_64 rng(3);
  for (const auto& dw : corpus::dyadic_corpus(19, 80, {1, 2}, 3, 16)) {
    const Verdict all = verify_superlevel_lemma(dw);
    CHECK(all.holds);
    CHECK(all.exact);
    const Rational delta = *dyadic_fujii_wilson(dw).value.exact;
    const Rational lambda0 = superlevel_threshold(dw, delta);
    const auto levels = critical_levels(dw);
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
      if (levels[k] < lambda0) continue;
      std::uniform_int_distribution<int> num(1, 9);
      const Rational mid = levels[k] + (levels[k + 1] - levels[k]) * Rational(num(rng), 10);
      const Verdict at_mid = verify_superlevel_lemma(dw, {mid});
      const Verdict at_level = verify_superlevel_lemma(dw, {levels[k]});
      CHECK(at_mid.holds);
      CHECK(*at_mid.ratio.exact <= *at_level.ratio.exact);
    }
  }
}

TEST_CASE("dyadic reverse Hoelder forms") {
  for (const auto& dw : corpus::dyadic_corpus(31, 80, {1, 2, 3}, 3, 16)) {
    const Verdict one = verify_dyadic_rhi(dw, 1.0L, TheoremId::T4_2);
    CHECK(one.holds);
    CHECK(one.exact);
    const long double delta = dyadic_fujii_wilson(dw).value.value;
    const long double top = admissible_range(delta, TheoremId::T4_2, dw.dim());
    const long double r = std::isinf(top) ? 3.0L : 1.0L + 0.9L * (top - 1.0L);
    CHECK(verify_dyadic_rhi(dw, r, TheoremId::T4_2).holds);
    CHECK(verify_dyadic_rhi(dw, r, TheoremId::T1_1).holds);
  }
}

TEST_CASE("flatness") {
  CHECK(flatness_check(unit(2, 2, std::vector<Rational>(16, q("7/3")))));
  std::vector<Rational> cells(16, q("2"));
  cells[9] = q("21/10");
  CHECK_FALSE(flatness_check(unit(2, 2, cells)));
}

TEST_CASE("dyadic weight validation") {
  CHECK_THROWS_AS(unit(2, 1, {q("1"), q("2"), q("3")}), DomainError);
  CHECK_THROWS_AS(unit(1, 1, {q("1"), q("0")}), DomainError);
  CHECK_THROWS_AS(unit(0, 0, {q("1")}), DomainError);
  CHECK_THROWS_AS(unit(4, 8, std::vector<Rational>(1, q("1"))), DomainError);
  CHECK_THROWS_AS(verify_dyadic_rhi(unit(1, 1, {q("1"), q("3")}), 1.1L, TheoremId::T1_2), DomainError);
}
