#include <benchmark/benchmark.h>

#include "grasscode/channel.hpp"
#include "grasscode/designer.hpp"
#include "grasscode/detector.hpp"
#include "grasscode/diametral.hpp"

using namespace grasscode;

namespace {

Constellation make(int M, int L) {
  DesignConfig cfg;
  cfg.M = M;
  cfg.L = L;
  return design(cfg);
}

std::vector<CMatrix> received(const Constellation& c, int N, int count) {
  std::vector<CMatrix> ys;
  for (int i = 0; i < count; ++i) {
    CounterRng rng(1, 0, static_cast<std::uint64_t>(i));
    ys.push_back(simulate_block(c.points[static_cast<std::size_t>(i) % c.points.size()], N, 10.0, rng));
  }
  return ys;
}

void BM_DetectNaive(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto c = make(M, 4 * M * M);
  const NaiveDetector det(c.points);
  const auto ys = received(c, M, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(det.detect(ys[i++ % ys.size()]));
}
BENCHMARK(BM_DetectNaive)->Arg(2)->Arg(4);

void BM_DetectFast(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto c = make(M, 4 * M * M);
  const FastDetector det(c.sparse, M);
  const auto ys = received(c, M, 256);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(det.detect(ys[i++ % ys.size()]));
}
BENCHMARK(BM_DetectFast)->Arg(2)->Arg(4);

void BM_ConstellationMetrics(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto c = make(M, 4 * M * M);
  for (auto _ : state) benchmark::DoNotOptimize(constellation_metrics(c.points, 2));
}
BENCHMARK(BM_ConstellationMetrics)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DesignM2L16(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make(2, 16));
}
BENCHMARK(BM_DesignM2L16)->Unit(benchmark::kMillisecond);

void BM_MaxDiametral(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_diametral_set(M));
}
BENCHMARK(BM_MaxDiametral)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
