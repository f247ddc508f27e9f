#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "triage/analysis.hpp"
#include "triage/beltrami.hpp"
#include "triage/transport.hpp"

using namespace triage;

namespace {

// Range argument k encodes delta = 10^-k.
double delta_of(const benchmark::State& state) { return std::pow(10.0, -static_cast<double>(state.range(0))); }

void BM_SolveCharacteristic(benchmark::State& state) {
  const DeltaFamily fam(delta_of(state));
  const GridSpec grid(512, 512);
  for (auto _ : state) {
    auto w = solve_characteristic(fam, LambdaPower{2}, reference_region(), grid);
    benchmark::DoNotOptimize(w.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.nx * grid.ny));
}
BENCHMARK(BM_SolveCharacteristic)->Arg(0)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SystemResidual(benchmark::State& state) {
  const DeltaFamily fam(delta_of(state));
  const auto uv = to_real_pair(fam, solve_characteristic(fam, LambdaPower{2}, reference_region(), GridSpec(512, 512)));
  const DeltaFamilyField field(fam);
  for (auto _ : state) benchmark::DoNotOptimize(system_residual(field, uv).max_r1);
}
BENCHMARK(BM_SystemResidual)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ScanRegion(benchmark::State& state) {
  const DeltaFamily fam(delta_of(state));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_region(fam, reference_region(), GridSpec(501, 501)).kappa);
  }
}
BENCHMARK(BM_ScanRegion)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Beurling(benchmark::State& state) {
  const TorusGrid grid(static_cast<std::size_t>(state.range(0)), 4.0);
  FourierOperators ops(grid);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexGrid f(grid.size());
  for (auto& v : f) v = {n(rng), n(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(ops.beurling(f).data());
}
BENCHMARK(BM_Beurling)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_NeumannIteration(benchmark::State& state) {
  const auto problem = delta_family_problem(DeltaFamily(delta_of(state)), TorusGrid(64, 4.0));
  for (auto _ : state) {
    const auto sol = solve_beltrami_neumann(problem);
    state.counters["iterations"] = static_cast<double>(sol.trace.iterations);
  }
}
BENCHMARK(BM_NeumannIteration)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
