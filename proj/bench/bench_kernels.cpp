// Serial reference sums against the OpenMP kernels, and replication
// throughput at one thread versus all threads.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pairlik/asymptotics.hpp"
#include "pairlik/harness.hpp"

namespace {

using pairlik::Design;
using pairlik::WeightSeq;

void BM_Tau2ApproxReference(benchmark::State& state) {
  const Design design = Design::uniform(static_cast<std::size_t>(state.range(0)));
  const WeightSeq w = WeightSeq::unit(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(pairlik::reference::tau2_approx_full(design, w));
}

void BM_Tau2ApproxParallel(benchmark::State& state) {
  const Design design = Design::uniform(static_cast<std::size_t>(state.range(0)));
  const WeightSeq w = WeightSeq::unit(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(pairlik::tau2_approx(design, w).tau2);
}

void BM_Tau2ExactReference(benchmark::State& state) {
  const Design design = Design::uniform(static_cast<std::size_t>(state.range(0)));
  const WeightSeq w = WeightSeq::unit(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(pairlik::reference::tau2_exact_full(design, w, 15.0));
}

void BM_Tau2ExactParallel(benchmark::State& state) {
  const Design design = Design::uniform(static_cast<std::size_t>(state.range(0)));
  const WeightSeq w = WeightSeq::unit(static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(pairlik::tau2_exact(design, w, 15.0).tau2);
}

void BM_Table1Replications(benchmark::State& state) {
  pairlik::ExperimentConfig config = pairlik::default_config(pairlik::Scenario::Table1);
  config.n_list = {201};
  config.replications = 64;
  config.estimators = {pairlik::Estimator::WPMLE};
  config.threads = state.range(0) == 0 ? omp_get_max_threads() : static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pairlik::run_table1(config).rows.size());
  state.counters["threads"] = config.threads;
}

BENCHMARK(BM_Tau2ApproxReference)->Args({201, 1})->Args({201, 10})->Args({801, 10});
BENCHMARK(BM_Tau2ApproxParallel)->Args({201, 1})->Args({201, 10})->Args({801, 10});
BENCHMARK(BM_Tau2ExactReference)->Args({201, 1})->Args({201, 10})->Args({801, 10});
BENCHMARK(BM_Tau2ExactParallel)->Args({201, 1})->Args({201, 10})->Args({801, 10});
BENCHMARK(BM_Table1Replications)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
