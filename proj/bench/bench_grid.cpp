// Parallel grid evaluation of mollified representatives against the serial loop.
#include <benchmark/benchmark.h>

#include "genss/oracle.hpp"

namespace {

using namespace genss;

// Example 1.1's solution: cut and smooth trig kernels plus generalized constants.
Dist example_solution() {
  const IVProblem p{PolyOp::from_descending({1.0, 0.0, 1.0}), Dist::delta(1)};
  return solve_ivp(p).dist;
}

void BM_GridSerial(benchmark::State& state) {
  const Dist y = example_solution();
  const auto grid = uniform_grid(-0.05, 0.05, static_cast<int>(state.range(0)));
  const MollifierSpec m = MollifierSpec::at(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_on_grid_serial(y, grid, m));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GridParallel(benchmark::State& state) {
  const Dist y = example_solution();
  const auto grid = uniform_grid(-0.05, 0.05, static_cast<int>(state.range(0)));
  const MollifierSpec m = MollifierSpec::at(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_on_grid(y, grid, m));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(256)->Arg(4096)->UseRealTime();
BENCHMARK(BM_GridParallel)->Arg(256)->Arg(4096)->UseRealTime();

BENCHMARK_MAIN();
