// Serial vs OpenMP kernels. Threads follow CHAOSKIT_THREADS / OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "chaoskit/diagnostics.hpp"
#include "chaoskit/kernels.hpp"
#include "chaoskit/operators.hpp"
#include "chaoskit/rng.hpp"

using namespace chaoskit;

namespace {

DenseOperator random_operator(std::size_t n) {
  SplitMix64 rng(42);
  DenseOperator a(n);
  for (Complex& z : a.entries()) z = rng.complex_normal();
  return a;
}

StateVector random_state(std::size_t n) {
  SplitMix64 rng(7);
  StateVector x(n);
  for (Complex& z : x.entries()) z = rng.complex_normal();
  return x;
}

template <bool Parallel>
void bm_matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseOperator a = random_operator(n);
  const StateVector x = random_state(n);
  std::vector<Complex> y(n);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::matvec(a, x.entries(), y);
    else
      kernels::matvec_serial(a, x.entries(), y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

template <bool Parallel>
void bm_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseOperator a = random_operator(n), b = random_operator(n);
  for (auto _ : state) {
    DenseOperator c = Parallel ? kernels::matmul(a, b) : kernels::matmul_serial(a, b);
    benchmark::DoNotOptimize(c.entries().data());
  }
}

template <bool Parallel>
void bm_panel_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto term = [](std::size_t i) {
    const double x = 0.5 + 1.5 * static_cast<double>(i) / 1e6;
    return x * std::abs(std::log(x)) * std::exp(-x);
  };
  for (auto _ : state) {
    const double s = Parallel ? kernels::panel_sum(n, term) : kernels::panel_sum_serial(n, term);
    benchmark::DoNotOptimize(s);
  }
}

template <bool Parallel>
void bm_orbit(benchmark::State& state) {
  BlockPerturbationSpec spec;
  spec.block_count = static_cast<std::size_t>(state.range(0));
  const DenseOperator t = make_block_perturbation(spec);
  const StateVector x = random_state(t.dim());
  for (auto _ : state) {
    const OrbitRecord r = Parallel ? orbit_norms(t, x, 400) : orbit_norms_serial(t, x, 400);
    benchmark::DoNotOptimize(r.norms.data());
  }
}

}  // namespace

BENCHMARK(bm_matvec<false>)->Name("matvec/serial")->Arg(256)->Arg(1024);
BENCHMARK(bm_matvec<true>)->Name("matvec/parallel")->Arg(256)->Arg(1024);
BENCHMARK(bm_matmul<false>)->Name("matmul/serial")->Arg(128)->Arg(256);
BENCHMARK(bm_matmul<true>)->Name("matmul/parallel")->Arg(128)->Arg(256);
BENCHMARK(bm_panel_sum<false>)->Name("panel_sum/serial")->Arg(1 << 16);
BENCHMARK(bm_panel_sum<true>)->Name("panel_sum/parallel")->Arg(1 << 16);
BENCHMARK(bm_orbit<false>)->Name("orbit/serial")->Arg(36);
BENCHMARK(bm_orbit<true>)->Name("orbit/parallel")->Arg(36);

BENCHMARK_MAIN();
