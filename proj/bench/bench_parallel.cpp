// Serial reference vs OpenMP kernels. Worker count is the benchmark argument;
// 1 runs the serial path.

#include <benchmark/benchmark.h>

#include "lmmse/experiments.hpp"
#include "lmmse/parallel.hpp"
#include "lmmse/rng.hpp"
#include "lmmse/sampling.hpp"

namespace {

void BM_GaussianReplications(benchmark::State& state) {
  lmmse::ExperimentConfig cfg;
  cfg.m = cfg.n_params = 32;
  cfg.eps_list = {0.25};
  cfg.replications = 64;
  cfg.master_seed = 11;
  cfg.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lmmse::run_gaussian_experiment(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.replications);
}

const lmmse::Matrix& covariance_input() {
  static const lmmse::Matrix rows = [] {
    lmmse::Rng rng({12, 0});
    return lmmse::standard_normal_matrix(8192, 128, rng);
  }();
  return rows;
}

void BM_CovarianceSerial(benchmark::State& state) {
  const lmmse::Matrix& rows = covariance_input();
  for (auto _ : state) benchmark::DoNotOptimize(lmmse::empirical_covariance_serial(rows));
}

void BM_CovarianceChunked(benchmark::State& state) {
  const lmmse::Matrix& rows = covariance_input();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lmmse::empirical_covariance_chunked(rows, workers));
}

}  // namespace

BENCHMARK(BM_GaussianReplications)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CovarianceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CovarianceChunked)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
