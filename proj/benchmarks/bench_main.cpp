#include <benchmark/benchmark.h>

#include "csf/enumerate.hpp"
#include "csf/markov_check.hpp"
#include "csf/sampler.hpp"

namespace csf {
namespace {

void BM_CountDecomposable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_decomposable(n, {}, 1));
}
BENCHMARK(BM_CountDecomposable)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_CheckWsm(benchmark::State& state) {
  const auto d = normalize_by_enumeration(erdos_renyi_csf(static_cast<int>(state.range(0)), 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(check_property(d, Property::WSM));
}
BENCHMARK(BM_CheckWsm)->DenseRange(4, 5)->Unit(benchmark::kMillisecond);

void BM_MhStepHub(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CsfLaw law = hub_law(n, VertexSet::full(n / 10), 4.0, 0.5);
  Graph star(n);
  for (int v = 1; v < n; ++v) star.add_edge(0, v);
  ChainState s = make_chain_state(law, DecomposableGraph(star), 1);
  CounterRng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(mh_step(s, law, rng));
}
BENCHMARK(BM_MhStepHub)->Arg(20)->Arg(200);

void BM_MhStepUniform(benchmark::State& state) {
  const CsfLaw law = CsfLaw::uniform(static_cast<int>(state.range(0)));
  ChainState s = make_chain_state(law, default_init(law), 1);
  CounterRng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(mh_step(s, law, rng));
}
BENCHMARK(BM_MhStepUniform)->Arg(5)->Arg(50);

}  // namespace
}  // namespace csf

BENCHMARK_MAIN();
