#include <benchmark/benchmark.h>

#include "hardcore/graph.hpp"
#include "hardcore/measures.hpp"
#include "hardcore/random.hpp"
#include "hardcore/samplers.hpp"
#include "hardcore/transport.hpp"

namespace {

using namespace hardcore;

void BM_GnpGeneration(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(gen_gnp(n, 0.5, seed++));
}
BENCHMARK(BM_GnpGeneration)->Arg(512)->Arg(2048);

void BM_GlauberRun(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Graph g = gen_gnp(n, 0.5, 7);
  GlauberParams params = GlauberParams::for_graph(n, 6);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(glauber_run(g, params, seed++));
}
BENCHMARK(BM_GlauberRun)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_GreedyRun(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Graph g = gen_gnp(n, 0.5, 7);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(greedy_run(g, 6, seed++));
}
BENCHMARK(BM_GreedyRun)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_CountIndependentSubsets(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Graph g = gen_gnp(n, 0.5, 11);
  VertexSet all = VertexSet::full(n);
  for (auto _ : state) benchmark::DoNotOptimize(count_independent_subsets(g, all, 4));
}
BENCHMARK(BM_CountIndependentSubsets)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_MaxIndependentSet(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Graph g = gen_gnp(n, 0.5, 13);
  for (auto _ : state) benchmark::DoNotOptimize(max_independent_set_size(g));
}
BENCHMARK(BM_MaxIndependentSet)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_ExactW2(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  Graph g = gen_gnp(n, 0.5, 17);
  Graph gp = resample_noise(g, {0.5, 0.5}, 19);
  ExactMeasure mu = hardcore_measure(g, 1.0);
  ExactMeasure nu = hardcore_measure(gp, 1.0);
  state.counters["support"] = static_cast<double>(mu.size() + nu.size());
  for (auto _ : state) benchmark::DoNotOptimize(w2_exact(mu, nu).value);
}
BENCHMARK(BM_ExactW2)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
