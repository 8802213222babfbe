#include <benchmark/benchmark.h>

#include <cmath>

#include "fracdiff/baselines.hpp"
#include "fracdiff/evaluator.hpp"
#include "fracdiff/stepper.hpp"

namespace {

using namespace fracdiff;

// One step plus one evaluation; cost should be linear in K and flat in the step index.
template <Stepper S>
void BM_Step(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto params = KernelParams::make(0.4, 0.0, 1e9);
  const auto rule = gauss_laguerre_rule(K);
  auto s = init_state(rule, params);
  const double h = 1e-4;
  double t = 0.0;
  double prev = 0.0;
  for (auto _ : state) {
    t += h;
    const double y = std::cos(t);
    if constexpr (S == Stepper::BackwardEuler) {
      step_backward_euler(s, t, y, params);
    } else {
      step_trapezoidal(s, t, y, prev, params);
    }
    prev = y;
    benchmark::DoNotOptimize(evaluate_derivative(s, rule, params));
  }
  state.SetComplexityN(K);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Step<Stepper::BackwardEuler>)->RangeMultiplier(2)->Range(8, 256)->Arg(500)->Complexity(benchmark::oN);
BENCHMARK(BM_Step<Stepper::Trapezoidal>)->RangeMultiplier(2)->Range(8, 256)->Arg(500)->Complexity(benchmark::oN);

void BM_BaselineStep(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto params = KernelParams::make(0.4, 0.0, 1e9);
  auto s = make_baseline_state(BaselineKind::Chatterjee, K, params);
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-4;
    baseline_step(s, t, std::cos(t));
    benchmark::DoNotOptimize(baseline_evaluate(s));
  }
  state.SetComplexityN(K);
}
BENCHMARK(BM_BaselineStep)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

void BM_FullRun(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto params = KernelParams::make(0.4, 0.0, 3.0);
  const auto grid = Grid::uniform(0.0, 3.0, N);
  for (auto _ : state) {
    auto r = compute_caputo_on_grid(params, grid, [](double t) { return 1.6 * std::pow(t, 0.6); }, 40,
                                    Stepper::Trapezoidal);
    benchmark::DoNotOptimize(r.values.data());
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_FullRun)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

}  // namespace
