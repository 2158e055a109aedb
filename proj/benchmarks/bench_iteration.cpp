#include <benchmark/benchmark.h>

#include "permusmooth/optimizer.hpp"
#include "permusmooth/pair_cost.hpp"
#include "permusmooth/rng.hpp"

namespace {

using namespace permusmooth;

DataMatrix random_matrix(std::size_t t, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(t * d);
  for (double& x : v) x = rng.next_double();
  return DataMatrix(t, d, std::move(v));
}

void BM_cache_build(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  DataMatrix x = random_matrix(t, d, 1);
  FeatureWeights w = FeatureWeights::uniform(d);
  for (auto _ : state) {
    PairCostCache cache = PairCostCache::build(x, w);
    benchmark::DoNotOptimize(cache.data());
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(t * t * d));
}
BENCHMARK(BM_cache_build)
    ->Args({64, 8})
    ->Args({128, 8})
    ->Args({256, 8})
    ->Args({200, 64})
    ->Args({200, 256})
    ->Args({200, 1024});

void BM_pair_scan(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  DataMatrix x = random_matrix(t, 8, 2);
  PairCostCache cache = PairCostCache::build(x, FeatureWeights::uniform(8));
  PermutationVector identity = PermutationVector::identity(t);
  for (auto _ : state) {
    SwapChoice c = p_step(cache, identity);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_pair_scan)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_w_step(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  std::vector<double> s(d);
  for (double& v : s) v = 10.0 * rng.next_double();
  for (auto _ : state) {
    FeatureWeights w = w_step(s, 0.7);
    benchmark::DoNotOptimize(w.values().data());
  }
}
BENCHMARK(BM_w_step)->Arg(64)->Arg(1024)->Arg(16384);

void BM_fit_synthetic_scale(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  DataMatrix x = random_matrix(t, 16, 4);
  FitConfig config;
  config.epsilon = 1.0;
  config.max_iters = 50;
  config.init_mode = InitMode::kRandomSigma;
  for (auto _ : state) {
    FitResult r = fit(x, config);
    benchmark::DoNotOptimize(r.breakdown.f_total);
  }
}
BENCHMARK(BM_fit_synthetic_scale)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
