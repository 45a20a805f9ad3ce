#include <random>

#include <benchmark/benchmark.h>

#include "l1lb/certifier.hpp"
#include "l1lb/l1metric.hpp"
#include "l1lb/pointset.hpp"

using namespace l1lb;

namespace {

void BM_VertexLabelDeep(benchmark::State& state) {
  const RecursiveCycleGraph g = build_graph({2, static_cast<std::uint64_t>(state.range(0))});
  std::mt19937_64 rng(1);
  std::vector<VertexAddress> queries;
  for (int i = 0; i < 256; ++i) queries.push_back(g.vertex_at(rng() % g.vertex_count()));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.vertex_label(queries[i++ % queries.size()]));
  }
}
BENCHMARK(BM_VertexLabelDeep)->Arg(8)->Arg(16)->Arg(23);

void BM_BuildPointSet(benchmark::State& state) {
  const GraphParams params{static_cast<std::uint64_t>(state.range(0)), static_cast<std::uint64_t>(state.range(1))};
  for (auto _ : state) {
    PointSet points{build_graph(params)};
    benchmark::DoNotOptimize(points.size());
  }
}
BENCHMARK(BM_BuildPointSet)->Args({2, 6})->Args({3, 4})->Args({4, 3});

void BM_Distortion(benchmark::State& state) {
  const PointSet points{build_graph({2, static_cast<std::uint64_t>(state.range(0))})};
  const Embedding id = Embedding::identity(points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(distortion(points, id));
  }
  state.SetComplexityN(static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_Distortion)->DenseRange(2, 5)->Complexity();

void BM_ConstraintReport(benchmark::State& state) {
  const PointSet points{build_graph({3, static_cast<std::uint64_t>(state.range(0))})};
  const Embedding id = Embedding::identity(points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(constraint_report(points, id));
  }
}
BENCHMARK(BM_ConstraintReport)->DenseRange(2, 4);

}  // namespace

BENCHMARK_MAIN();
