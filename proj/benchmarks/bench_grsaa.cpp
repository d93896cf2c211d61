#include <benchmark/benchmark.h>

#include "grsaa/problems.hpp"
#include "grsaa/tracer.hpp"

using namespace grsaa;

namespace {

HomotopyMap sin_map(int n, std::size_t N, std::size_t L) {
  const ProblemInstance inst = sin_instance(n);
  return make_homotopy(inst, SampleSet::draw(inst.distribution, N, 1), Partition::uniform(N, L),
                       NodeSchedule::uniform(L));
}

// one blend evaluation in the last segment touches all N samples
void BM_blend_value(benchmark::State& state) {
  const HomotopyMap m = sin_map(3, static_cast<std::size_t>(state.range(0)), 4);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(3, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(m.blended().blend(x, 0.1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_blend_value)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_blend_with_derivatives(benchmark::State& state) {
  const HomotopyMap m = sin_map(3, static_cast<std::size_t>(state.range(0)), 4);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(3, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(m.blended().evaluate(x, 0.1, true));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_blend_with_derivatives)->Arg(1000)->Arg(10000);

void BM_trace_market(benchmark::State& state) {
  const ProblemInstance inst = market_instance();
  const std::size_t N = static_cast<std::size_t>(state.range(0));
  const std::size_t L = (N * 11 + 19) / 20;  // ceil(0.55 N)
  const HomotopyMap m =
      make_homotopy(inst, SampleSet::draw(inst.distribution, N, 1), Partition::uniform(N, L), NodeSchedule::uniform(L));
  for (auto _ : state) benchmark::DoNotOptimize(trace(m, TraceConfig{}));
}
BENCHMARK(BM_trace_market)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_trace_sin_standard(benchmark::State& state) {
  const HomotopyMap m = sin_map(3, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(trace(m, TraceConfig{}));
}
BENCHMARK(BM_trace_sin_standard)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
