// Serial reference loops vs the OpenMP kernels at alpha = 5+0.5i, beta = 0.2.
#include <benchmark/benchmark.h>

#include "cqed/dynamics.hpp"
#include "cqed/inversion.hpp"

namespace {

using namespace cqed;

const Complex kAlpha(5.0, 0.5);

SystemParams fig1_params() {
  SystemParams p;
  p.beta = 0.2;
  return p;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_EvolveNumericFull(benchmark::State& state) {
  const SystemParams p = fig1_params();
  const FockCutoff cutoff(static_cast<int>(state.range(1)));
  const OperatorMatrix h = build_full_hamiltonian(p, cutoff);
  const StateVector psi0 = product_state(Qubit::e, coherent_state(kAlpha, cutoff, true));
  const TimeGrid grid = TimeGrid::uniform(25.0, 2000, p.g_magnitude());
  for (auto _ : state) {
    auto r = evolve_numeric(h, psi0, grid, Method::full_numeric, p, {.execution = exec_of(state)});
    benchmark::DoNotOptimize(r.sigma_z.data());
  }
  state.SetLabel(exec_of(state) == Execution::serial ? "serial" : "parallel");
}

void BM_EvolveTransformed(benchmark::State& state) {
  const SystemParams p = fig1_params();
  const FockCutoff cutoff(static_cast<int>(state.range(1)));
  const StateVector psi0 = product_state(Qubit::e, coherent_state(kAlpha, cutoff, true));
  const TimeGrid grid = TimeGrid::uniform(25.0, 400, p.g_magnitude());
  for (auto _ : state) {
    auto r = evolve_transformed(p, psi0, grid, cutoff, {.execution = exec_of(state)});
    benchmark::DoNotOptimize(r.sigma_z.data());
  }
  state.SetLabel(exec_of(state) == Execution::serial ? "serial" : "parallel");
}

void BM_InversionSeries(benchmark::State& state) {
  const SystemParams p = fig1_params();
  const InversionSeries series(effective_amplitude(kAlpha, p.beta, AmplitudeConvention::printed), SeriesConfig{});
  const TimeGrid grid = TimeGrid::uniform(25.0, 2000, p.g_magnitude());
  for (auto _ : state) {
    auto w = inversion_series(series, p.g_magnitude(), p.e_j, grid, exec_of(state));
    benchmark::DoNotOptimize(w.data());
  }
  state.SetLabel(exec_of(state) == Execution::serial ? "serial" : "parallel");
}

BENCHMARK(BM_EvolveNumericFull)->ArgsProduct({{0, 1}, {80}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveTransformed)->ArgsProduct({{0, 1}, {80}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InversionSeries)->ArgsProduct({{0, 1}, {0}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
