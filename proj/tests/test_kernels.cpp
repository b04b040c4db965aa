#include <doctest.h>

#include "fixtures.hpp"
#include "shocknet/errors.hpp"
#include "shocknet/kernels.hpp"
#include "shocknet/simulation.hpp"

using namespace shocknet;

namespace {

std::vector<Network> nets_for_tally() {
  std::vector<Network> nets{fixtures::load("three_link.net"), fixtures::load("bridge.net"),
                            fixtures::series(5), fixtures::parallel(5), fixtures::load("single.net")};
  Rng rng(31);
  for (int i = 0; i < 10; ++i) nets.push_back(fixtures::random_network(3 + i % 4, 4 + i % 4, rng));
  return nets;
}

}  // namespace

TEST_CASE("pruned parallel tally equals literal enumeration") {
  for (const auto& net : nets_for_tally()) {
    const StructureFunction sf(net);
    const auto a = serial::tally_ordered_partitions(sf, 10);
    const auto b = parallel::tally_ordered_partitions(sf, 10);
    CHECK(a.death == b.death);
    CHECK(a.killing == b.killing);
    CHECK(a.total == b.total);
  }
}

TEST_CASE("permutation tallies agree") {
  for (const auto& net : nets_for_tally()) {
    const StructureFunction sf(net);
    CHECK(serial::tally_permutations(sf) == parallel::tally_permutations(sf));
  }
}

TEST_CASE("sampled tallies are identical for the same seed") {
  for (const auto& net : nets_for_tally()) {
    const StructureFunction sf(net);
    const auto a = serial::tally_sampled_partitions(sf, 20'000, 77);
    const auto b = parallel::tally_sampled_partitions(sf, 20'000, 77);
    CHECK(a.death == b.death);
    CHECK(a.killing == b.killing);
    CHECK(a.total == 20'000);
  }
}

TEST_CASE("lifetime simulation is identical across implementations") {
  const Network bridge = fixtures::load("bridge.net");
  for (auto mode : {SimMode::model_faithful, SimMode::mechanistic}) {
    SimConfig cfg{FirstArrivalLaw::weibull(2, 1), DamageModel::binomial(0.3), mode, 5000, 12, bridge, {}};
    const LifetimeSimulator sim(cfg);
    const auto a = serial::simulate_lifetimes(sim, cfg.trials, cfg.seed);
    const auto b = parallel::simulate_lifetimes(sim, cfg.trials, cfg.seed);
    CHECK(a == b);
  }
}

TEST_CASE("tally limits") {
  const StructureFunction sf(fixtures::series(6));
  CHECK_THROWS_AS(serial::tally_ordered_partitions(sf, 5), LimitError);
  CHECK_THROWS_AS(parallel::tally_ordered_partitions(sf, 5), LimitError);
  PartitionTally x(2), y(2);
  x.death = {1, 2};
  y.death = {3, 4};
  x.total = 3;
  y.total = 7;
  x += y;
  CHECK(x.death == std::vector<std::uint64_t>{4, 6});
  CHECK(x.total == 10);
}
