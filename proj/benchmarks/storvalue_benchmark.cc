// Copyright 2026 The storvalue Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "storvalue/dispatch.h"
#include "storvalue/fbs.h"
#include "storvalue/reserve.h"
#include "storvalue/scenario.h"

namespace storvalue {
namespace {

DispatchProblem DayProblem(int horizon, double alpha) {
  DispatchProblem problem;
  problem.scenario = SynthesizeScenario(42, horizon);
  problem.alpha = alpha;
  return problem;
}

void BM_SolveDispatch(benchmark::State& state) {
  DispatchProblem problem = DayProblem(static_cast<int>(state.range(0)), 0.2);
  problem.beta = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveDispatch(problem).objective);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveDispatch)->RangeMultiplier(2)->Range(24, 192)->Complexity();

void BM_MinFeasibleCapacity(benchmark::State& state) {
  const DispatchProblem problem = DayProblem(24, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MinFeasibleCapacity(problem));
  }
}
BENCHMARK(BM_MinFeasibleCapacity);

void BM_BuildCostCurve(benchmark::State& state) {
  const DispatchProblem problem = DayProblem(static_cast<int>(state.range(0)), 0.1);
  int breakpoints = 0;
  for (auto _ : state) {
    const FbsResult result = BuildCostCurve(problem, 500.0);
    breakpoints = static_cast<int>(result.curve.breakpoints().size());
    benchmark::DoNotOptimize(breakpoints);
  }
  state.counters["breakpoints"] = breakpoints;
}
BENCHMARK(BM_BuildCostCurve)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_ReserveCurve(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> tail(1.0);
  std::bernoulli_distribution sign(0.5);
  ErrorSampleSet errors;
  for (int i = 0; i < state.range(0); ++i) {
    errors.samples.push_back(sign(rng) ? tail(rng) : -tail(rng));
  }
  const std::vector<double> q = {70, 80, 90, 96, 99};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        BuildReserveCurve(errors, ReserveMethod::kEmpirical, q).evaluations);
    benchmark::DoNotOptimize(
        BuildReserveCurve(errors, ReserveMethod::kLaplace, q).evaluations);
  }
}
BENCHMARK(BM_ReserveCurve)->Arg(1000)->Arg(100000);

}  // namespace
}  // namespace storvalue

BENCHMARK_MAIN();
