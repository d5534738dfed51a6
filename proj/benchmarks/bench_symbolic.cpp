#include "sublevel/operators.hpp"
#include "sublevel/symbolic.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace sublevel;

void BM_SimplifyDiff(benchmark::State& state) {
  const Expr f = parse("(x1 + 2*x2)^5*exp(x1)*sin(3*x2) + x1^3*x2^4", 2);
  for (auto _ : state) {
    Expr g = f;
    for (int k = 0; k < state.range(0); ++k) g = diff(g, 1 + k % 2);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_SimplifyDiff)->DenseRange(1, 4);

void BM_Parse(benchmark::State& state) {
  const std::string text = "(1/2)*exp(x1)*sin(3*x2) + (x1 - 3/4*x2)^4 - cos(x1*x2)";
  for (auto _ : state) benchmark::DoNotOptimize(parse(text, 2));
}
BENCHMARK(BM_Parse);

// Symbolic determinant of a d x d matrix of polynomial entries.
void BM_Determinant(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ExprMatrix m(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m[i].push_back(Expr::power(Expr::variable(1 + (i + j) % 3) + Expr::constant(i - j), 1 + (i * j) % 3));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m));
}
BENCHMARK(BM_Determinant)->DenseRange(2, 5);

void BM_ApplyHessian(benchmark::State& state) {
  const auto r = parse_recipe("det[1,2](det[1](id),det[2](id))");
  const Expr f = parse("(1/10)*exp(x1)*sin(10*x2)", 2);
  for (auto _ : state) benchmark::DoNotOptimize(apply_recipe(r, f, 2));
}
BENCHMARK(BM_ApplyHessian);

void BM_ZeroTestSampled(benchmark::State& state) {
  const Expr e = parse("sin(x1)^2 + cos(x1)^2 - 1 + exp(x1)*exp(x2) - exp(x1 + x2)", 2);
  for (auto _ : state) benchmark::DoNotOptimize(zero_test(e));
}
BENCHMARK(BM_ZeroTestSampled);

}  // namespace
