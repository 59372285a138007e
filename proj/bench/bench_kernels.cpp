// Parallel kernels against their serial references.
//
//   OMP_NUM_THREADS=8 ./bench_kernels --benchmark_filter=Table

#include <benchmark/benchmark.h>

#include "gbsdks/hafnian.hpp"
#include "gbsdks/optimize.hpp"
#include "gbsdks/weight_table.hpp"

using namespace gbsdks;

namespace {

const Graph& planted() {
  static const Graph g = planted_instance(1).graph;
  return g;
}

void BM_SubsetHafnians(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(subset_hafnians(planted(), k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(binomial(30, k)));
}

void BM_SubsetHafniansSerial(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(subset_hafnians_serial(planted(), k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(binomial(30, k)));
}

void BM_WeightTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_weight_table(planted(), static_cast<int>(state.range(0))));
}

void BM_WeightTableSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_weight_table_serial(planted(), static_cast<int>(state.range(0))));
  }
}

void BM_Exhaustive(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_best(planted(), static_cast<int>(state.range(0))));
}

void BM_ExhaustiveSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_best_serial(planted(), static_cast<int>(state.range(0))));
  }
}

void BM_HafnianFast(benchmark::State& state) {
  const auto m = adjacency_matrix(erdos_renyi(static_cast<int>(state.range(0)), 0.6, std::uint64_t{1}));
  for (auto _ : state) benchmark::DoNotOptimize(hafnian_fast(m));
}

void BM_HafnianPairings(benchmark::State& state) {
  const auto m = adjacency_matrix(erdos_renyi(static_cast<int>(state.range(0)), 0.6, std::uint64_t{1}));
  for (auto _ : state) benchmark::DoNotOptimize(hafnian_pairings(m));
}

}  // namespace

BENCHMARK(BM_SubsetHafnians)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsetHafniansSerial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightTable)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_WeightTableSerial)->Arg(8)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_Exhaustive)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_ExhaustiveSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_HafnianFast)->DenseRange(8, 16, 4);
BENCHMARK(BM_HafnianPairings)->DenseRange(8, 16, 4);

BENCHMARK_MAIN();
