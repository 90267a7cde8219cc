#include "rhilab/corpus.hpp"

#include "rhilab/errors.hpp"

namespace rhilab::corpus {

StepWeight random_step_weight(std::mt19937_64& rng, const StepOptions& opt) {
  if (opt.max_pieces < 1 || opt.max_value < 1) throw DomainError("corpus options must be positive");
  std::uniform_int_distribution<int> pieces(1, opt.max_pieces), len(1, 8), val(1, opt.max_value);
  const int m = pieces(rng);
  std::vector<Rational> bp{Rational(0)};
  std::vector<Rational> values;
  for (int k = 0; k < m; ++k) {
    bp.push_back(bp.back() + Rational(len(rng), 4));
    values.emplace_back(val(rng));
  }
  return StepWeight(std::move(bp), std::move(values));
}

std::vector<StepWeight> step_corpus(std::uint64_t seed, std::size_t count, const StepOptions& opt) {
  std::mt19937_64 rng(seed);
  std::vector<StepWeight> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_step_weight(rng, opt));
  return out;
}

DyadicWeight random_dyadic_weight(std::mt19937_64& rng, int n, int depth, int max_value) {
  if (n < 1 || depth < 0 || max_value < 1) throw DomainError("bad dyadic corpus parameters");
  std::uniform_int_distribution<int> val(1, max_value);
  const std::size_t cells = std::size_t{1} << (n * depth);
  std::vector<Rational> v;
  v.reserve(cells);
  for (std::size_t k = 0; k < cells; ++k) v.emplace_back(val(rng));
  return DyadicWeight(n, Cube(std::vector<Rational>(n, Rational(0)), Rational(1)), depth, std::move(v));
}

std::vector<DyadicWeight> dyadic_corpus(std::uint64_t seed, std::size_t count, const std::vector<int>& dims,
                                        int max_depth, int max_value) {
  if (dims.empty()) throw DomainError("no dimensions given");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, dims.size() - 1);
  std::uniform_int_distribution<int> depth(0, max_depth);
  std::vector<DyadicWeight> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int n = dims[pick(rng)];
    const int l = depth(rng);
    out.push_back(random_dyadic_weight(rng, n, l, max_value));
  }
  return out;
}

}  // namespace rhilab::corpus
