// OpenMP grid kernels against their serial references.
#include <benchmark/benchmark.h>

#include <vector>

#include "frachardy/fraclap.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/testfns.hpp"
#include "frachardy/verify.hpp"

namespace {

using namespace frachardy;

std::vector<double> radii(int n, double hi) {
  std::vector<double> r;
  for (int i = 0; i < n; ++i) r.push_back(hi * (i + 0.5) / n);
  return r;
}

void BM_psi_grid_serial(benchmark::State& state) {
  const auto r = radii(static_cast<int>(state.range(0)), 0.99);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::psi_grid_serial(4, 0.4, r));
}

void BM_psi_grid_parallel(benchmark::State& state) {
  const auto r = radii(static_cast<int>(state.range(0)), 0.99);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::psi_grid(4, 0.4, r));
}

const testfns::RadialProfile kBump = testfns::RadialProfile::bump(2.5, 1.0);

void BM_fraclap_grid_serial(benchmark::State& state) {
  const auto r = radii(static_cast<int>(state.range(0)), 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(fraclap::fraclap_radial_grid_serial(kBump, 3, 0.5, r, 1e-10));
}

void BM_fraclap_grid_parallel(benchmark::State& state) {
  const auto r = radii(static_cast<int>(state.range(0)), 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(fraclap::fraclap_radial_grid(kBump, 3, 0.5, r, 1e-10));
}

void BM_cordoba_serial(benchmark::State& state) {
  const auto r = radii(static_cast<int>(state.range(0)), 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(verify::check_cordoba_serial(kBump, 3, 0.5, 0.1, 2.0, r, 1e-10));
}

void BM_cordoba_parallel(benchmark::State& state) {
  const auto r = radii(static_cast<int>(state.range(0)), 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(verify::check_cordoba(kBump, 3, 0.5, 0.1, 2.0, r, 1e-10));
}

}  // namespace

BENCHMARK(BM_psi_grid_serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_psi_grid_parallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fraclap_grid_serial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fraclap_grid_parallel)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cordoba_serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cordoba_parallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
