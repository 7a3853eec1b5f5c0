// Serial reference kernel against the OpenMP kernel for the operator matrices.

#include <benchmark/benchmark.h>

#include "fracvide/collocate.hpp"
#include "fracvide/problem.hpp"

namespace {

const fracvide::TransformedProblem& problem() {
  static const fracvide::TransformedProblem tp = fracvide::transform(fracvide::builtin("ex5"));
  return tp;
}

void assemble_with(benchmark::State& state, fracvide::Execution exec) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto sys = fracvide::assemble(problem(), n, 0.5, -0.5, -0.5, {.oversample = 1, .exec = exec});
    benchmark::DoNotOptimize(sys.C.data());
  }
  state.SetComplexityN(n);
}

void BM_AssembleSerial(benchmark::State& state) {
  assemble_with(state, fracvide::Execution::serial_reference);
}

void BM_AssembleParallel(benchmark::State& state) {
  assemble_with(state, fracvide::Execution::parallel);
}

void BM_SolveParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto sol = fracvide::solve(fracvide::assemble(problem(), n, 0.5, -0.5, -0.5));
    benchmark::DoNotOptimize(sol.u.data());
  }
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->RangeMultiplier(2)->Range(8, 64)->Complexity();
BENCHMARK(BM_AssembleParallel)->RangeMultiplier(2)->Range(8, 64)->Complexity();
BENCHMARK(BM_SolveParallel)->RangeMultiplier(2)->Range(8, 64);

BENCHMARK_MAIN();
