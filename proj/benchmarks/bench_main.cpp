#include <benchmark/benchmark.h>

#include <vector>

#include "fbr/expansion.hpp"
#include "fbr/grid.hpp"
#include "fbr/kernels.hpp"
#include "fbr/specfun.hpp"
#include "fbr/zeros.hpp"

namespace {

void BM_BesselJ(benchmark::State& state) {
  const fbr::Order order(0.7);
  const double x = static_cast<double>(state.range(0)) + 0.37;
  for (auto _ : state) benchmark::DoNotOptimize(fbr::bessel_j(order, x));
}
// one argument per branch: series, Miller recurrence, asymptotic
BENCHMARK(BM_BesselJ)->Arg(5)->Arg(18)->Arg(400);

void BM_Zeros(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fbr::ZeroTable::compute(fbr::Order(0.5), state.range(0)));
}
BENCHMARK(BM_Zeros)->Arg(64)->Arg(512);

void BM_Coefficients(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto table = fbr::ZeroTable::compute(fbr::Order(0.0), n);
  const fbr::RadialFunction f{[](double x) { return x * (1.0 - x); }, {}, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(fbr::coefficients(f, table, n, fbr::System::psi));
}
BENCHMARK(BM_Coefficients)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_KernelPoint(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0));
  const auto table = fbr::zeros_covering(fbr::Order(0.5), radius);
  for (auto _ : state) benchmark::DoNotOptimize(fbr::kernel(table, 1.0, radius, 0.31, 0.62));
}
BENCHMARK(BM_KernelPoint)->Arg(50)->Arg(400);

void BM_BoundSweep(benchmark::State& state) {
  const std::vector<double> radii{25.0, 50.0, 100.0, 200.0};
  const auto table = fbr::zeros_covering(fbr::Order(0.5), radii.back());
  const auto grid = fbr::evaluation_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fbr::bound_ratio_sweep(table, 0.3, radii, grid));
}
BENCHMARK(BM_BoundSweep)->Arg(160)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
