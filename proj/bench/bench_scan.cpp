// Serial reference vs OpenMP kernels on jittered penny patches.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "cpack/analysis.hpp"
#include "cpack/scan.hpp"

using namespace cpack;

namespace {

DiskSet jittered_patch(int rings) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::vector<Disk> disks;
  for (int j = -rings; j <= rings; ++j) {
    for (int i = -rings; i <= rings; ++i) {
      if (std::abs(i + j) > rings) continue;
      const double x = 2.0 * (i + 0.5 * j) * 0.98 + jitter(rng);
      const double y = std::sqrt(3.0) * j * 0.98 + jitter(rng);
      disks.emplace_back(std::to_string(i) + "_" + std::to_string(j), x, y, 1.0);
    }
  }
  return DiskSet(std::move(disks));
}

Exec mode(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_MeetingPairs(benchmark::State& state) {
  const DiskSet ds = jittered_patch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan::meeting_pairs(ds, 1e-9, mode(state)));
  state.counters["disks"] = static_cast<double>(ds.size());
}

void BM_Thin(benchmark::State& state) {
  const DiskSet ds = jittered_patch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_thin(ds, 1e-9, mode(state)));
  state.counters["disks"] = static_cast<double>(ds.size());
}

void BM_Extract(benchmark::State& state) {
  const DiskSet ds = jittered_patch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_contact_graph(ds, 1e-9, mode(state)));
}

}  // namespace

BENCHMARK(BM_MeetingPairs)->ArgsProduct({{10, 20, 40}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Thin)->ArgsProduct({{10, 20, 40}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Extract)->ArgsProduct({{20, 40}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
