#include <benchmark/benchmark.h>

#include "fracdiff/quadrature.hpp"

namespace {

void BM_GaussLaguerreRule(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rule = fracdiff::gauss_laguerre_rule(K);
    benchmark::DoNotOptimize(rule.nodes().data());
  }
  state.SetComplexityN(K);
}
BENCHMARK(BM_GaussLaguerreRule)->RangeMultiplier(2)->Range(8, 256)->Arg(500)->Complexity(benchmark::oNSquared);

}  // namespace
