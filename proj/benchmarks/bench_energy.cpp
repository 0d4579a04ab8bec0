#include <benchmark/benchmark.h>

#include <random>

#include "ramsey/annealer.hpp"
#include "ramsey/energy.hpp"
#include "ramsey/verifier.hpp"

using namespace ramsey;

namespace {

Colouring random_start(std::size_t n, std::size_t l) {
  Rng rng(n * 31 + l);
  return random_colouring(n, l, rng);
}

void BM_TotalEnergy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem prob({5, 5});
  const Colouring c = random_start(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(total_energy(c, prob).total);
}
BENCHMARK(BM_TotalEnergy)->Arg(17)->Arg(30)->Arg(40);

void BM_NaiveEnergy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem prob({4, 4});
  const Colouring c = random_start(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(naive_energy(c, prob));
}
BENCHMARK(BM_NaiveEnergy)->Arg(17)->Arg(25);

void BM_DeltaEnergy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem prob({5, 5});
  const Colouring c = random_start(n, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    const Edge e = c.edge_at(i++ % c.n_edges());
    benchmark::DoNotOptimize(delta_energy(c, prob, e, static_cast<ColourId>(1 - c.at(e))));
  }
}
BENCHMARK(BM_DeltaEnergy)->Arg(30)->Arg(40);

void BM_TrackerDelta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem prob({5, 5});
  const EnergyTracker tracker(random_start(n, 2), prob);
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t e = i++ % tracker.colouring().n_edges();
    benchmark::DoNotOptimize(tracker.delta(e, static_cast<ColourId>(1 - tracker.colouring().at_index(e))));
  }
}
BENCHMARK(BM_TrackerDelta)->Arg(30)->Arg(40)->Arg(60);

void BM_TrackerApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Problem prob({3, 3, 4});
  EnergyTracker tracker(random_start(n, 3), prob);
  Rng rng(1);
  for (auto _ : state) {
    const std::size_t e = rng() % tracker.colouring().n_edges();
    tracker.apply(e, static_cast<ColourId>(rng() % 3));
  }
}
BENCHMARK(BM_TrackerApply)->Arg(28)->Arg(43);

}  // namespace
