#include <benchmark/benchmark.h>

#include "radpulse/eigen.hpp"
#include "radpulse/oracles.hpp"
#include "radpulse/series.hpp"
#include "radpulse/signatures.hpp"

using namespace radpulse;

namespace {

ModelParams dimensionless(double pe, double kappa = 0.0) {
  ModelParams p;
  p.velocity = pe;
  p.rate_k = kappa;
  return p;
}

void BM_BuildBasis(benchmark::State& state) {
  const PecletNumber pe{4.0};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_basis(pe, n));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BuildBasis)->Arg(100)->Arg(1000)->Arg(5000);

void BM_NormalizedExitFlow(benchmark::State& state) {
  const PecletNumber pe{4.0};
  const auto basis = build_basis(pe, 2000);
  // tau in thousandths: small tau needs many terms, late tau very few
  const double tau = state.range(0) / 1000.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalized_exit_flow(pe, 1.0, tau, basis));
  }
}
BENCHMARK(BM_NormalizedExitFlow)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void BM_SampleCurve(benchmark::State& state) {
  const PecletNumber pe{2.0};
  const auto basis = build_basis(pe, 400);
  const auto p = dimensionless(2.0, 0.5);
  const auto grid = make_time_grid(0.001, 2.0, static_cast<int>(state.range(0)), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_exit_flow(p, basis, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleCurve)->Arg(100)->Arg(1000);

void BM_SignatureRow(benchmark::State& state) {
  const PecletNumber pe{3.0};
  const auto basis = build_basis(pe, 400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_signatures(pe, 1.0, 1.0, 1.0, basis));
  }
}
BENCHMARK(BM_SignatureRow);

void BM_PeakFullSeries(benchmark::State& state) {
  const PecletNumber pe{3.0};
  const auto basis = build_basis(pe, 400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(peak_characteristic(pe, 0.0, basis));
  }
}
BENCHMARK(BM_PeakFullSeries);

void BM_FdSolve(benchmark::State& state) {
  const auto p = dimensionless(1.0);
  FDGrid grid;
  grid.nx = static_cast<int>(state.range(0));
  grid.dt = 1e-3;
  grid.t_end = 0.5;
  grid.epsilon = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fd_solve(p, grid));
  }
  // both the dt and dt/2 sweeps count
  state.SetItemsProcessed(state.iterations() * grid.nx * 1500);
}
BENCHMARK(BM_FdSolve)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_McPaths(benchmark::State& state) {
  const auto p = dimensionless(1.0);
  MCConfig cfg;
  cfg.n_paths = state.range(0);
  cfg.dt = 1e-3;
  cfg.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_exit_times(p, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_paths);
}
BENCHMARK(BM_McPaths)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
