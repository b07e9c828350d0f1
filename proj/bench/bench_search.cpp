// Serial reference kernel against the OpenMP kernel on the full K(n) scan.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "latmat/constants.hpp"

namespace {

void BM_SearchSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto total = latmat::TriangularMask::count(n);
  for (auto _ : state) benchmark::DoNotOptimize(latmat::search_range_serial(n, latmat::Extremum::min, 0, total));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * total));
}

void BM_SearchParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  const auto total = latmat::TriangularMask::count(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(latmat::search_range_parallel(n, latmat::Extremum::min, 0, total, jobs));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * total));
}

void parallel_args(benchmark::internal::Benchmark* b) {
  const int max_jobs = omp_get_max_threads();
  for (int n : {5, 6})
    for (int jobs = 1; jobs <= max_jobs; jobs *= 2) b->Args({n, jobs});
}

}  // namespace

BENCHMARK(BM_SearchSerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
