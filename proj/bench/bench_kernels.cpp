// Serial reference kernels against their OpenMP counterparts, plus the
// distance transform and the dominance sweep against brute force.

#include "clt/cboundary.hpp"
#include "clt/kernels.hpp"
#include "clt/setlimits.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <random>

using namespace clt;

namespace {

struct Workload {
  CloudPtr cloud;
  PointSet members;
  // Down-closed, so the violation scans run to completion.
  PointSet down;
  std::vector<NullCoord> apexes;
};

const Workload &workload(double h) {
  static std::map<double, Workload> cache;
  auto it = cache.find(h);
  if (it != cache.end()) return it->second;
  Workload w;
  w.cloud = sample(ModelSpacetime::mink2(), h, Window{Frame::Chart, Rect{-1, 1, -1, 1}, false});
  w.members = PointSet(w.cloud->size());
  std::mt19937_64 rng(11);
  for (std::size_t i = 0; i < w.cloud->size(); ++i) {
    const Point p = w.cloud->points[i];
    w.members[i] = std::hypot(p[0] - 0.2, p[1] + 0.1) < 0.4 || rng() % 500 == 0;
  }
  for (int k = 0; k < 24; ++k) w.apexes.push_back(w.cloud->null[rng() % w.cloud->size()]);
  const auto ind = kernels::serial::union_of_pasts(w.cloud->null, w.apexes);
  w.down = PointSet(ind.size());
  for (std::size_t i = 0; i < ind.size(); ++i) w.down[i] = ind[i] != 0;
  return cache.emplace(h, std::move(w)).first->second;
}

double resolution(const benchmark::State &s) { return 1.0 / double(s.range(0)); }

void args(benchmark::internal::Benchmark *b) { b->Arg(25)->Arg(50)->Arg(100); }

void BM_distance_profile_serial(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::distance_profile(w.cloud->points, w.members));
}
void BM_distance_profile_parallel(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::parallel::distance_profile(w.cloud->points, w.members));
}
void BM_grid_transform_serial(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s)
    benchmark::DoNotOptimize(kernels::serial::grid_distance_profile(*w.cloud->grid, w.cloud->cell_of_point, w.members));
}
void BM_grid_transform_parallel(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s)
    benchmark::DoNotOptimize(
        kernels::parallel::grid_distance_profile(*w.cloud->grid, w.cloud->cell_of_point, w.members));
}
void BM_union_of_pasts_serial(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::union_of_pasts(w.cloud->null, w.apexes));
}
void BM_union_of_pasts_parallel(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::parallel::union_of_pasts(w.cloud->null, w.apexes));
}
void BM_down_set_violation_serial(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::serial::down_set_violation(w.cloud->null, w.down));
}
void BM_down_set_violation_parallel(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::parallel::down_set_violation(w.cloud->null, w.down));
}
// Sweep-based down-closure test on the same input.
void BM_down_set_sweep(benchmark::State &s) {
  const auto &w = workload(resolution(s));
  for (auto _ : s) benchmark::DoNotOptimize(is_sampled_down_set(*w.cloud, w.down));
}

} // namespace

BENCHMARK(BM_distance_profile_serial)->Apply(args);
BENCHMARK(BM_distance_profile_parallel)->Apply(args);
BENCHMARK(BM_grid_transform_serial)->Apply(args);
BENCHMARK(BM_grid_transform_parallel)->Apply(args);
BENCHMARK(BM_union_of_pasts_serial)->Apply(args);
BENCHMARK(BM_union_of_pasts_parallel)->Apply(args);
BENCHMARK(BM_down_set_violation_serial)->Arg(25)->Arg(50);
BENCHMARK(BM_down_set_violation_parallel)->Arg(25)->Arg(50);
BENCHMARK(BM_down_set_sweep)->Arg(25)->Arg(50)->Arg(100);

BENCHMARK_MAIN();
