#include "sublevel/numerics.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace sublevel;

void BM_MeasureDisk(benchmark::State& state) {
  const auto pi = FunctionTuple::euclidean(parse("x1^2 + x2^2", 2), 2);
  const auto c = ConstraintSet::sublevel(Box::cube(2, -1, 1), 3, 0.01);
  MeasureOptions o;
  o.resolution = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(constrained_measure(pi, c, o));
  state.counters["cells"] = static_cast<double>(state.range(0) * state.range(0));
}
BENCHMARK(BM_MeasureDisk)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_MeasureMonteCarlo(benchmark::State& state) {
  const auto pi = FunctionTuple::euclidean(parse("x1*x2 + x3^2 - x4", 4), 4);
  const auto c = ConstraintSet::sublevel(Box::cube(4, 0, 1), 5, 0.05);
  MeasureOptions o;
  o.samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(constrained_measure(pi, c, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MeasureMonteCarlo)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_InfAbs(benchmark::State& state) {
  const Expr e = parse("-exp(2*x1) + (1/10)*x1*x2", 2);
  for (auto _ : state) benchmark::DoNotOptimize(inf_abs(e, Box::cube(2, 0, 1), state.range(0)));
}
BENCHMARK(BM_InfAbs)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_Oscillatory(benchmark::State& state) {
  const auto pi = FunctionTuple::euclidean(parse("x1^2 + x2^2", 2), 2);
  const ConstraintSet c{Box::cube(2, -1, 1), {}};
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oscillatory_integral(pi, 3, c, lambda));
}
BENCHMARK(BM_Oscillatory)->RangeMultiplier(8)->Range(8, 512)->Unit(benchmark::kMillisecond);

void BM_OscillatoryConstrained(benchmark::State& state) {
  const auto pi = FunctionTuple::euclidean(parse("x1*x2", 2), 2);
  const auto c = ConstraintSet::sublevel(Box::cube(2, 0, 1), 3, 0.1);
  OscillatoryOptions o;
  o.tol = 1e-6;
  for (auto _ : state) benchmark::DoNotOptimize(oscillatory_integral(pi, 3, c, 64.0, o));
}
BENCHMARK(BM_OscillatoryConstrained)->Unit(benchmark::kMillisecond);

}  // namespace
