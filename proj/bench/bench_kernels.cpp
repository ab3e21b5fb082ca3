// Serial reference vs OpenMP for the O(N^2) quadrature kernels.
//
//   bench_kernels --benchmark_filter=opB

#include <benchmark/benchmark.h>

#include <cmath>

#include "muskat/singular_ops.hpp"

using namespace muskat;

namespace {

struct Inputs {
  GridFunction f;
  GridFunction omega;
};

Inputs make_inputs(std::size_t n) {
  const Grid grid(20.0, n);
  return {GridFunction::from_function(grid, [](double x) { return 0.4 * std::exp(-x * x / 4.5); }),
          GridFunction::from_function(grid, [](double x) { return x * std::exp(-x * x / 2.0); })};
}

Backend backend_of(const benchmark::State& state) { return state.range(1) == 0 ? Backend::serial : Backend::openmp; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) == 0 ? "serial" : "openmp");
  const auto n = static_cast<double>(state.range(0));
  state.counters["pairs/s"] = benchmark::Counter(0.5 * n * n * static_cast<double>(state.iterations()),
                                                 benchmark::Counter::kIsRate);
}

void opA(benchmark::State& state) {
  const Inputs in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(op_A_apply(in.f, in.omega, backend_of(state)));
  label(state);
}

void opB(benchmark::State& state) {
  const Inputs in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(op_B_apply(in.f, in.omega, backend_of(state)));
  label(state);
}

void b21(benchmark::State& state) {
  const Inputs in = make_inputs(static_cast<std::size_t>(state.range(0)));
  const KernelSpec spec{{in.f}, {in.f, in.omega}};
  for (auto _ : state) benchmark::DoNotOptimize(bnm_apply(spec, in.omega, backend_of(state)));
  label(state);
}

void t_a(benchmark::State& state) {
  const Inputs in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(t_a_apply(in.f, in.omega, backend_of(state)));
  label(state);
}

void assemble_A(benchmark::State& state) {
  const Inputs in = make_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_dense(MuskatA{in.f}, kDefaultDenseCap, backend_of(state)));
  label(state);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {256, 1024, 4096}) {
    for (long backend : {0, 1}) b->Args({n, backend});
  }
  b->ArgNames({"N", "omp"})->Unit(benchmark::kMicrosecond);
}

}  // namespace

BENCHMARK(opA)->Apply(sizes);
BENCHMARK(opB)->Apply(sizes);
BENCHMARK(b21)->Apply(sizes);
BENCHMARK(t_a)->Apply(sizes);
BENCHMARK(assemble_A)->Args({256, 0})->Args({256, 1})->Args({1024, 0})->Args({1024, 1})->ArgNames({"N", "omp"})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
