#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "esmt/approx.hpp"
#include "esmt/cpr.hpp"
#include "esmt/exact.hpp"
#include "esmt/melzak.hpp"
#include "esmt/model.hpp"

namespace {

using namespace esmt;

std::vector<Point> random_points(int n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const auto uniform = [&] {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  };
  std::vector<Point> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = uniform();
    const double y = uniform();
    pts.emplace_back(x, y);
  }
  return pts;
}

void BM_ConvexHull(benchmark::State& state) {
  const auto pts = random_points(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull(pts));
}
BENCHMARK(BM_ConvexHull)->Arg(100)->Arg(1000);

void BM_EuclideanMst(benchmark::State& state) {
  const auto pts = random_points(static_cast<int>(state.range(0)), 12);
  for (auto _ : state) benchmark::DoNotOptimize(euclidean_mst(pts).length);
}
BENCHMARK(BM_EuclideanMst)->Arg(100)->Arg(1000);

void BM_MinimumFst(benchmark::State& state) {
  const auto pts = random_points(static_cast<int>(state.range(0)), 13);
  for (auto _ : state) benchmark::DoNotOptimize(minimum_fst(pts).length);
}
BENCHMARK(BM_MinimumFst)->DenseRange(4, 7);

void BM_SolveExact(benchmark::State& state) {
  Instance inst;
  inst.name = "bench";
  inst.terminals = random_points(static_cast<int>(state.range(0)), 14);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst).length);
}
BENCHMARK(BM_SolveExact)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

void BM_SolveCprSinglyConnected(benchmark::State& state) {
  const CprSpec spec{.n = static_cast<int>(state.range(0)), .lambda = 30.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve_cpr(spec).tree->length);
}
BENCHMARK(BM_SolveCprSinglyConnected)->Arg(13)->Arg(100)->Arg(500);

void BM_Fptas(benchmark::State& state) {
  Instance inst;
  inst.name = "bench";
  inst.terminals = random_points(5, 15);
  const double eps = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_fptas(inst, eps).tree.length);
}
BENCHMARK(BM_Fptas)->Arg(200)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
