#include <cmath>
#include <complex>

#include <benchmark/benchmark.h>

#include <beamgram/quadrature.hpp>
#include <beamgram/specfun.hpp>

namespace q = beamgram::quadrature;

static void BM_GaussLegendre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(q::gauss_legendre(n, 0.0, 1.0));
}
BENCHMARK(BM_GaussLegendre)->RangeMultiplier(4)->Range(8, 512);

static void BM_GaussLaguerre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(q::gauss_laguerre_modified(n));
}
BENCHMARK(BM_GaussLaguerre)->RangeMultiplier(2)->Range(16, 128);

static void BM_IntegrateTail(benchmark::State& state) {
  auto g = [](double k) -> std::complex<double> { return 2.0 * k * k * k * std::exp(-k * k); };
  for (auto _ : state) benchmark::DoNotOptimize(q::integrate_tail(g, 1.5, 1e-13));
}
BENCHMARK(BM_IntegrateTail);

static void BM_BesselJ(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    x = x < 40.0 ? x + 0.37 : 0.1;
    benchmark::DoNotOptimize(beamgram::specfun::bessel_j(l, x));
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(3)->Arg(12);
