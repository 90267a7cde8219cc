#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rhilab/dyadic.hpp"
#include "rhilab/step_weight.hpp"

namespace rhilab::corpus {

/// Seeded random instances for property runs. Same seed, same instances.
struct StepOptions {
  int max_pieces = 8;
  int max_value = 16;
};

/// Pieces on (0, total) with lengths k/4 (k = 1..8) and integer values in [1, max_value].
StepWeight random_step_weight(std::mt19937_64& rng, const StepOptions& opt = {});
std::vector<StepWeight> step_corpus(std::uint64_t seed, std::size_t count, const StepOptions& opt = {});

/// Unit cube, cell values uniform in {1..max_value}.
DyadicWeight random_dyadic_weight(std::mt19937_64& rng, int n, int depth, int max_value = 16);
/// n drawn from `dims`, depth uniform in [0, max_depth].
std::vector<DyadicWeight> dyadic_corpus(std::uint64_t seed, std::size_t count, const std::vector<int>& dims,
                                        int max_depth, int max_value = 16);

}  // namespace rhilab::corpus
