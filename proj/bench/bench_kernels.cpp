// Parallel vs serial rational-point enumeration, and a geometric fiber sweep.
#include <benchmark/benchmark.h>

#include "dtower/parallel.hpp"
#include "dtower/towers.hpp"

using namespace dtower;

namespace {

// Grid for the enumeration benchmarks; the second argument is the level.
const TowerParams& params_for(std::int64_t which) {
  static const TowerParams table[] = {TowerParams::make(3, 1, 3, 2), TowerParams::make(2, 1, 3, 2),
                                      TowerParams::make(5, 1, 2, 1)};
  return table[which];
}

void args(benchmark::internal::Benchmark* b) {
  b->Args({0, 3})->Args({1, 4})->Args({2, 3});
}

void BM_EnumerateParallel(benchmark::State& state) {
  const auto& p = params_for(state.range(0));
  const auto n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_rational(p, n, Variant::F));
  state.counters["threads"] = worker_count();
}

void BM_EnumerateSerial(benchmark::State& state) {
  const auto& p = params_for(state.range(0));
  const auto n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_rational_serial(p, n, Variant::F));
}

void BM_FiberSweep(benchmark::State& state) {
  const auto& p = params_for(state.range(0));
  FieldPtr amb = make_ambient(p, 2 * p.m);
  std::vector<FieldElem> xs;
  for (std::uint64_t i = 1; i < amb->size(); ++i) xs.push_back(amb->from_index(i));
  for (auto _ : state) {
    auto sizes = parallel_map<std::size_t>(xs.size(), [&](std::size_t i) { return fiber_solutions(p, amb, xs[i]).size(); });
    benchmark::DoNotOptimize(sizes);
  }
}

}  // namespace

BENCHMARK(BM_EnumerateParallel)->Apply(args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateSerial)->Apply(args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FiberSweep)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
