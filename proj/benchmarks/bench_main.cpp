#include <benchmark/benchmark.h>

#include "rhilab/constants.hpp"
#include "rhilab/corpus.hpp"
#include "rhilab/dyadic.hpp"
#include "rhilab/extremal.hpp"
#include "rhilab/maximal.hpp"
#include "rhilab/rhi.hpp"

using namespace rhilab;

namespace {

StepWeight weight_with(int pieces) {
  corpus::StepOptions opt;
  opt.max_pieces = pieces;
  std::mt19937_64 rng(pieces);
  StepWeight w = corpus::random_step_weight(rng, opt);
  while (static_cast<int>(w.pieces()) != pieces) w = corpus::random_step_weight(rng, opt);
  return w;
}

void BM_MaximalProfile(benchmark::State& state) {
  const StepWeight w = weight_with(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maximal_profile(w, w.support(), Operator::M));
}
BENCHMARK(BM_MaximalProfile)->Arg(4)->Arg(16)->Arg(64);

void BM_FujiiWilson(benchmark::State& state) {
  const StepWeight w = weight_with(8);
  const auto grid = RefinementGrid::for_weight(w, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fujii_wilson_constant(w, grid));
}
BENCHMARK(BM_FujiiWilson)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_A1Exact(benchmark::State& state) {
  const StepWeight w = weight_with(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a1_constant(w));
}
BENCHMARK(BM_A1Exact)->Arg(8)->Arg(64);

void BM_VerifyEndpoint(benchmark::State& state) {
  const StepWeight w = weight_with(8);
  for (auto _ : state) benchmark::DoNotOptimize(verify(TheoremId::T1_3, w, {}));
}
BENCHMARK(BM_VerifyEndpoint);

void BM_DyadicFujiiWilson(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const DyadicWeight dw = corpus::random_dyadic_weight(rng, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_fujii_wilson(dw));
}
BENCHMARK(BM_DyadicFujiiWilson)->Args({1, 8})->Args({2, 4})->Args({3, 3})->Unit(benchmark::kMicrosecond);

void BM_SuperlevelLemma(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const DyadicWeight dw = corpus::random_dyadic_weight(rng, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_superlevel_lemma(dw));
}
BENCHMARK(BM_SuperlevelLemma)->Args({2, 3})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_SharpnessSearch(benchmark::State& state) {
  SearchConfig cfg;
  cfg.pieces = static_cast<int>(state.range(0));
  cfg.budget = 500;
  for (auto _ : state) benchmark::DoNotOptimize(sharpness_search(cfg));
}
BENCHMARK(BM_SharpnessSearch)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
