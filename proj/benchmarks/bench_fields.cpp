#include <benchmark/benchmark.h>

#include <beamgram/fields.hpp>

namespace fd = beamgram::fields;

static void BM_ExactIntegratorSetup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fd::ExactFieldIntegrator(0, 1, 1, 0.3));
}
BENCHMARK(BM_ExactIntegratorSetup)->Unit(benchmark::kMicrosecond);

static void BM_ExactFieldPoint(benchmark::State& state) {
  const fd::ExactFieldIntegrator field(0, 1, 1, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(field({0.8, 0.3, 0.5}));
  state.counters["nodes"] = static_cast<double>(field.node_count());
}
BENCHMARK(BM_ExactFieldPoint)->Unit(benchmark::kMicrosecond);

static void BM_FresnelField(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fd::fresnel_paraxial_field(1, 2, 1, {1.1, 0.4, 0.7}));
}
BENCHMARK(BM_FresnelField)->Unit(benchmark::kMicrosecond);

static void BM_ClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fd::closed_form_paraxial(1, 2, 1, {1.1, 0.4, 0.7}));
}
BENCHMARK(BM_ClosedForm);
