#include <benchmark/benchmark.h>

#include "tccr/kernels.hpp"
#include "tccr/reconstruct.hpp"
#include "tccr/representations.hpp"

namespace {

// Operands shaped like the real workload: a generator times a dense-ish stage.
struct Operands {
  tccr::kernels::Matrix sparse;
  tccr::kernels::Matrix dense;
};

Operands operands(int d, int cap) {
  const tccr::TccrFamily a = tccr::build_fock_tccr(d, 0.5, cap);
  Operands out;
  out.sparse = a.a(d).matrix();
  out.dense = tccr::kernels::Matrix::Random(out.sparse.rows(), out.sparse.cols());
  return out;
}

void BM_Serial(benchmark::State& state) {
  const Operands ops = operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(tccr::kernels::multiply_serial(ops.dense, ops.sparse));
}

void BM_ParallelSparse(benchmark::State& state) {
  const Operands ops = operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(tccr::kernels::multiply_parallel(ops.dense, ops.sparse));
}

void BM_EigenGemm(benchmark::State& state) {
  const Operands ops = operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    tccr::kernels::Matrix c = ops.dense * ops.sparse;
    benchmark::DoNotOptimize(c);
  }
}

void BM_Dispatch(benchmark::State& state) {
  const Operands ops = operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(tccr::kernels::multiply(ops.sparse, ops.dense));
}

void BM_LemmaSuite(benchmark::State& state) {
  const auto execution = state.range(0) == 0 ? tccr::Execution::Serial : tccr::Execution::Parallel;
  const tccr::GeneratorFamily t = tccr::build_irrep({2, 2, 0.0, 8, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(tccr::verify_lemma_suite(t, 0.5, execution));
}

}  // namespace

BENCHMARK(BM_Serial)->Args({2, 8})->Args({3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelSparse)->Args({2, 8})->Args({3, 5})->Args({3, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EigenGemm)->Args({2, 8})->Args({3, 5})->Args({3, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dispatch)->Args({2, 8})->Args({3, 5})->Args({3, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmaSuite)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
