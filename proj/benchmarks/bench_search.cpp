// Large targets that are out of reach for a quick desk run. Each benchmark
// anneals once with a step budget and reports whether zero energy was reached.

#include <benchmark/benchmark.h>

#include "ramsey/annealer.hpp"

using namespace ramsey;

namespace {

void anneal_once(benchmark::State& state, const std::vector<int>& sizes) {
  const auto n = static_cast<std::size_t>(state.range(0));
  AnnealConfig cfg;
  cfg.rng_seed = 1;
  cfg.max_steps = static_cast<std::uint64_t>(state.range(1));
  SearchOutcome out;
  for (auto _ : state) out = anneal(Problem(sizes), n, cfg);
  state.counters["found"] = out.status == SearchStatus::FoundZeroEnergy;
  state.counters["best_energy"] = out.best_energy;
  state.counters["steps"] = static_cast<double>(out.steps_taken);
  state.counters["steps_per_s"] = benchmark::Counter(static_cast<double>(out.steps_taken), benchmark::Counter::kIsRate);
}

void BM_R55(benchmark::State& state) { anneal_once(state, {5, 5}); }
BENCHMARK(BM_R55)->Args({30, 10'000'000})->Args({35, 10'000'000})->Args({40, 10'000'000})
    ->Iterations(1)->Unit(benchmark::kSecond);

void BM_R334(benchmark::State& state) { anneal_once(state, {3, 3, 4}); }
BENCHMARK(BM_R334)->Args({27, 10'000'000})->Args({28, 10'000'000})->Iterations(1)->Unit(benchmark::kSecond);

void BM_R335(benchmark::State& state) { anneal_once(state, {3, 3, 5}); }
BENCHMARK(BM_R335)->Args({43, 5'000'000})->Iterations(1)->Unit(benchmark::kSecond);

void BM_R344(benchmark::State& state) { anneal_once(state, {3, 4, 4}); }
BENCHMARK(BM_R344)->Args({48, 5'000'000})->Iterations(1)->Unit(benchmark::kSecond);

void BM_R3333(benchmark::State& state) { anneal_once(state, {3, 3, 3, 3}); }
BENCHMARK(BM_R3333)->Args({43, 5'000'000})->Iterations(1)->Unit(benchmark::kSecond);

}  // namespace
BENCHMARK_MAIN();
