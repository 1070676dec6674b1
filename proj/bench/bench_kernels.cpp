// Serial reference against the OpenMP kernels. Set OMP_NUM_THREADS to vary
// the thread count of the parallel variants.

#include <random>

#include <benchmark/benchmark.h>

#include "resonance/linalg.hpp"
#include "resonance/transfer.hpp"

namespace {

using namespace resonance;

ComplexMatrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> u;
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = {u(rng), u(rng)};
  }
  return a;
}

void BM_log_det_serial(benchmark::State& state) {
  const auto a = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::log_det(a));
}

void BM_log_det_parallel(benchmark::State& state) {
  const auto a = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(log_det(a));
}

BENCHMARK(BM_log_det_serial)->Arg(96)->Arg(288)->Arg(864)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_log_det_parallel)->Arg(96)->Arg(288)->Arg(864)->Unit(benchmark::kMillisecond);

void BM_lparts_serial(benchmark::State& state) {
  const auto data = three_funnel(10, 10, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::lparts(data, 24, static_cast<int>(state.range(0))));
  }
}

void BM_lparts_parallel(benchmark::State& state) {
  const auto data = three_funnel(10, 10, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lparts(data, 24, static_cast<int>(state.range(0))));
  }
}

BENCHMARK(BM_lparts_serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lparts_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_zeta_serial(benchmark::State& state) {
  const auto parts = serial::lparts(three_funnel(10, 10, 10), 24, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::zeta(parts, cplx(0.3, 5.0)));
}

void BM_zeta_parallel(benchmark::State& state) {
  const auto parts = lparts(three_funnel(10, 10, 10), 24, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zeta(parts, cplx(0.3, 5.0)));
}

BENCHMARK(BM_zeta_serial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_zeta_parallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
