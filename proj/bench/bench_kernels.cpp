// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "shocknet/kernels.hpp"
#include "shocknet/network.hpp"
#include "shocknet/simulation.hpp"

using namespace shocknet;

namespace {

// Ladder of `rungs` squares: 3 * rungs + 1 links between the two ends.
Network ladder(int rungs) {
  std::vector<std::string> nodes;
  std::vector<Network::LinkSpec> links;
  for (int i = 0; i <= rungs; ++i) {
    nodes.push_back("u" + std::to_string(i));
    nodes.push_back("l" + std::to_string(i));
  }
  int id = 0;
  links.push_back({++id, "u0", "l0"});
  for (int i = 1; i <= rungs; ++i) {
    const auto s = std::to_string(i), p = std::to_string(i - 1);
    links.push_back({++id, "u" + p, "u" + s});
    links.push_back({++id, "l" + p, "l" + s});
    links.push_back({++id, "u" + s, "l" + s});
  }
  return Network::create(nodes, links, {"u0", "l" + std::to_string(rungs)});
}

const StructureFunction& ladder_sf(int rungs) {
  static std::map<int, StructureFunction> cache;
  auto it = cache.find(rungs);
  if (it == cache.end()) it = cache.emplace(rungs, StructureFunction(ladder(rungs))).first;
  return it->second;
}

void BM_TallySerial(benchmark::State& state) {
  const auto& sf = ladder_sf(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::tally_ordered_partitions(sf, 10));
}

void BM_TallyParallel(benchmark::State& state) {
  const auto& sf = ladder_sf(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parallel::tally_ordered_partitions(sf, 10));
}

void BM_SampledSerial(benchmark::State& state) {
  const auto& sf = ladder_sf(3);
  for (auto _ : state) benchmark::DoNotOptimize(serial::tally_sampled_partitions(sf, state.range(0), 1));
}

void BM_SampledParallel(benchmark::State& state) {
  const auto& sf = ladder_sf(3);
  for (auto _ : state) benchmark::DoNotOptimize(parallel::tally_sampled_partitions(sf, state.range(0), 1));
}

SimConfig sim_config(std::uint64_t trials) {
  return {FirstArrivalLaw::weibull(2, 1), DamageModel::binomial(0.2), SimMode::mechanistic, trials, 1, ladder(3), {}};
}

void BM_SimulateSerial(benchmark::State& state) {
  const LifetimeSimulator sim(sim_config(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::simulate_lifetimes(sim, state.range(0), 1));
}

void BM_SimulateParallel(benchmark::State& state) {
  const LifetimeSimulator sim(sim_config(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parallel::simulate_lifetimes(sim, state.range(0), 1));
}

}  // namespace

BENCHMARK(BM_TallySerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TallyParallel)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampledSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampledParallel)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
