// Serial reference vs OpenMP kernels on benchmark-sized inputs.

#include <benchmark/benchmark.h>

#include <vector>

#include "riemdr/generators.h"
#include "riemdr/graph.h"
#include "riemdr/kernels.h"

namespace {

using namespace riemdr;

const LabeledDataset& sphere_data() {
  static const LabeledDataset d = generate(DatasetKind::SphereHard, 42);
  return d;
}

const LabeledDataset& spd_points(int n) {
  static std::vector<LabeledDataset> cache;
  for (const auto& d : cache)
    if (static_cast<int>(d.size()) == n) return d;
  Rng rng(5);
  const ManifoldSpec spec = ManifoldSpec::spd(5);
  LabeledDataset d{spec, {}, {}, "spd"};
  for (int i = 0; i < n; ++i) {
    d.points.push_back(random_point(spec, rng));
    d.labels.push_back(0);
  }
  cache.push_back(std::move(d));
  return cache.back();
}

template <auto Kernel>
void BM_PairwiseSphere(benchmark::State& state) {
  const auto& d = sphere_data();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(d.points));
}

template <auto Kernel>
void BM_PairwiseSpd(benchmark::State& state) {
  const auto& d = spd_points(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(d.points));
}

template <auto Kernel>
void BM_Lift(benchmark::State& state) {
  const auto& d = spd_points(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(d.points.front(), d.points));
}

template <auto Kernel>
void BM_ShortestPaths(benchmark::State& state) {
  const auto& d = sphere_data();
  const NeighborGraph g = knn_graph(kernels::serial::pairwise_distances(d.points), 10);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g.edges));
}

BENCHMARK(BM_PairwiseSphere<kernels::serial::pairwise_distances>)->Name("pairwise/sphere100/serial");
BENCHMARK(BM_PairwiseSphere<kernels::omp::pairwise_distances>)->Name("pairwise/sphere100/omp");
BENCHMARK(BM_PairwiseSpd<kernels::serial::pairwise_distances>)->Name("pairwise/spd5/serial")->Arg(200);
BENCHMARK(BM_PairwiseSpd<kernels::omp::pairwise_distances>)->Name("pairwise/spd5/omp")->Arg(200);
BENCHMARK(BM_Lift<kernels::serial::lift>)->Name("lift/spd5/serial")->Arg(1000);
BENCHMARK(BM_Lift<kernels::omp::lift>)->Name("lift/spd5/omp")->Arg(1000);
BENCHMARK(BM_ShortestPaths<kernels::serial::shortest_paths>)->Name("shortest_paths/serial");
BENCHMARK(BM_ShortestPaths<kernels::omp::shortest_paths>)->Name("shortest_paths/omp");

}  // namespace

BENCHMARK_MAIN();
