// Serial reference vs OpenMP series multiplication on dense random operands.

#include <benchmark/benchmark.h>

#include "pnf/harness.hpp"
#include "pnf/kernels.hpp"

namespace {

using namespace pnf;

struct Operands {
  Series a, b;
};

Operands operands(int order) {
  const Grading g = Grading::nondiag();
  return {random_series(11, g, 2, order, 0.8, order), random_series(12, g, 2, order, 0.8, order)};
}

void BM_MulSerial(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Operands op = operands(order);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::mul_serial(op.a.terms(), op.b.terms(), op.a.grading(), order));
  state.counters["pairs"] = static_cast<double>(op.a.size() * op.b.size());
}

void BM_MulParallel(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Operands op = operands(order);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::mul_parallel(op.a.terms(), op.b.terms(), op.a.grading(), order));
  state.counters["pairs"] = static_cast<double>(op.a.size() * op.b.size());
}

}  // namespace

BENCHMARK(BM_MulSerial)->Arg(16)->Arg(24)->Arg(32)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulParallel)->Arg(16)->Arg(24)->Arg(32)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
