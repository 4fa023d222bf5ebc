#include <benchmark/benchmark.h>

#include <beamgram/gram.hpp>
#include <beamgram/states.hpp>

static void BM_DeltaF(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(beamgram::gram::delta_f(m, m + 1, 2, 0.7));
}
BENCHMARK(BM_DeltaF)->Arg(0)->Arg(4)->Arg(16);

static void BM_GramMatrix(benchmark::State& state) {
  beamgram::BeamConfig cfg;
  cfg.f = 1.0;
  cfg.m_max = static_cast<int>(state.range(0));
  cfg.l_set = {-2, -1, 0, 1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(beamgram::gram::gram_matrix(cfg));
}
BENCHMARK(BM_GramMatrix)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_StateOverlap(benchmark::State& state) {
  beamgram::BeamConfig cfg;
  cfg.f = 0.5;
  const auto grid = beamgram::states::make_polar_grid(0.5);
  const auto a = beamgram::states::build_state({1, 1, 0, 1}, cfg, grid);
  const auto b = beamgram::states::build_state({1, 1, 2, 1}, cfg, grid);
  for (auto _ : state) benchmark::DoNotOptimize(beamgram::states::state_overlap(a, b));
}
BENCHMARK(BM_StateOverlap);
