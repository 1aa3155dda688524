// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "fermient/density.hpp"
#include "fermient/ensemble.hpp"
#include "fermient/matrix.hpp"
#include "fermient/search.hpp"

using namespace fermient;

namespace {

CMatrix gamma_for(int D, int N, int M) {
  return build_gamma(sample_random_state(D, N, 1), M).entries;
}

void BM_GramSerial(benchmark::State& st) {
  const auto g = gamma_for(static_cast<int>(st.range(0)), 4, 2);
  for (auto _ : st) benchmark::DoNotOptimize(gram_serial(g));
}

void BM_GramParallel(benchmark::State& st) {
  const auto g = gamma_for(static_cast<int>(st.range(0)), 4, 2);
  for (auto _ : st) benchmark::DoNotOptimize(gram(g, 0));
}

void BM_DensitySerial(benchmark::State& st) {
  const auto s = sample_random_state(static_cast<int>(st.range(0)), 5, 2);
  for (auto _ : st) benchmark::DoNotOptimize(build_dm(s, 2, 1));
}

void BM_DensityParallel(benchmark::State& st) {
  const auto s = sample_random_state(static_cast<int>(st.range(0)), 5, 2);
  for (auto _ : st) benchmark::DoNotOptimize(build_dm(s, 2, 0));
}

void BM_EnsembleSerial(benchmark::State& st) {
  const EnsembleConfig cfg{.D = 16, .N = 4, .M = 2, .realizations = 32, .seed = 3};
  for (auto _ : st) benchmark::DoNotOptimize(run_ensemble_serial(cfg));
}

void BM_EnsembleParallel(benchmark::State& st) {
  EnsembleConfig cfg{.D = 16, .N = 4, .M = 2, .realizations = 32, .seed = 3};
  cfg.threads = 0;
  for (auto _ : st) benchmark::DoNotOptimize(run_ensemble(cfg));
}

void BM_Enumerate(benchmark::State& st) {
  EnumerationOptions opt;
  opt.threads = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto stats = enumerate_admissible_classes(10, 5, 2, opt, [](const Hypergraph&) { return true; });
    benchmark::DoNotOptimize(stats.classes_visited);
  }
}

}  // namespace

BENCHMARK(BM_GramSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensitySerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
