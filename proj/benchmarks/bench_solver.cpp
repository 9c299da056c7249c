#include <benchmark/benchmark.h>

#include "bq/diagnostics.hpp"
#include "bq/initial_data.hpp"
#include "bq/timestepper.hpp"
#include "bq/transforms.hpp"

using namespace bq;

namespace {

Grid grid_of(const benchmark::State& st) { return Grid(static_cast<int>(st.range(0)), static_cast<int>(st.range(0) / 2)); }

CoefficientModel model_of(const benchmark::State& st) {
  return st.range(1) == 0 ? CoefficientModel::constant() : CoefficientModel::quadratic_kappa();
}

void BM_RoundTrip(benchmark::State& st) {
  const State s = random_smooth_state(grid_of(st), 1, 1.0, 0.5);
  for (auto _ : st) {
    SpectralField back = to_spectral(to_physical(s.theta), Parity::Sine);
    benchmark::DoNotOptimize(back);
  }
}

void BM_Rhs(benchmark::State& st) {
  const State s = random_smooth_state(grid_of(st), 1, 1.0, 0.5);
  const CoefficientModel model = model_of(st);
  for (auto _ : st) {
    Tendency t = rhs(s, model);
    benchmark::DoNotOptimize(t);
  }
}

void BM_Step(benchmark::State& st) {
  const CoefficientModel model = model_of(st);
  StepperConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 1e9;
  Stepper stepper(model, cfg);
  State s = random_smooth_state(grid_of(st), 1, 1.0, 0.5);
  for (auto _ : st) stepper.advance(s, cfg.t_end);
}

void BM_Record(benchmark::State& st) {
  const State s = random_smooth_state(grid_of(st), 1, 1.0, 0.5);
  const CoefficientModel model = model_of(st);
  for (auto _ : st) {
    DiagnosticsRecord r = record(s, model);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_RoundTrip)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Rhs)->ArgsProduct({{64, 128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->ArgsProduct({{64, 128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Record)->ArgsProduct({{64, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
