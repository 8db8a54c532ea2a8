// Parallel ensemble driver against the serial reference.
#include <benchmark/benchmark.h>

#include "smcf/harness.hpp"

namespace {

smcf::RunConfig bench_config() {
  smcf::RunConfig cfg;
  cfg.model.form = smcf::ModelForm::ItoMcf;
  cfg.n = 32;
  cfg.dt = 1e-4;
  cfg.T = 0.01;
  cfg.initial_condition = "modes:[(1,0,0.5,0),(0,1,0.3,1.5707963267948966)]";
  cfg.record_stride = 10;
  return cfg;
}

void BM_EnsembleSerial(benchmark::State& state) {
  const auto cfg = bench_config();
  for (auto _ : state) {
    auto rep = smcf::run_ensemble_serial(cfg, static_cast<int>(state.range(0)), 1);
    benchmark::DoNotOptimize(rep.paths.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EnsembleParallel(benchmark::State& state) {
  const auto cfg = bench_config();
  for (auto _ : state) {
    auto rep = smcf::run_ensemble(cfg, static_cast<int>(state.range(0)), 1, {}, smcf::worker_count());
    benchmark::DoNotOptimize(rep.paths.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_EnsembleSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
