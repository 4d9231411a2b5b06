#include <benchmark/benchmark.h>

#include <random>

#include "qchar/closedforms.hpp"
#include "qchar/kernels.hpp"

using namespace qchar;
using kernels::Backend;

namespace {

Backend backend_of(const benchmark::State& st) { return st.range(1) ? Backend::Parallel : Backend::Serial; }

QCharSeries::Terms subset_series(int n) {
  Region reg{{-2 * n, 0}, n};
  std::vector<int> ys;
  for (int k = 0; k < n; ++k) ys.push_back(-2 * k - 1);
  return standard_qchar(ys, reg).terms();
}

void BM_SeriesProduct(benchmark::State& st) {
  auto a = subset_series(static_cast<int>(st.range(0)));
  int cap = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::series_product(a, a, cap, backend_of(st)));
  st.SetLabel(backend_of(st) == Backend::Parallel ? "parallel" : "serial");
}

void BM_SeriesSum(benchmark::State& st) {
  std::vector<QCharSeries::Terms> parts;
  for (int i = 0; i < 32; ++i) parts.push_back(subset_series(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::series_sum(parts, backend_of(st)));
  st.SetLabel(backend_of(st) == Backend::Parallel ? "parallel" : "serial");
}

void BM_MatmulRational(benchmark::State& st) {
  size_t n = static_cast<size_t>(st.range(0));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Matrix<Rational> a(n, n), b(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      a(i, j) = Rational(num(rng), den(rng));
      a(i, j).canonicalize();
      b(i, j) = Rational(num(rng), den(rng));
      b(i, j).canonicalize();
    }
  for (auto _ : st) benchmark::DoNotOptimize(kernels::matmul(a, b, backend_of(st)));
  st.SetLabel(backend_of(st) == Backend::Parallel ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_SeriesProduct)->ArgsProduct({{6, 8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesSum)->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulRational)->ArgsProduct({{32, 64}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
