#include <algorithm>
#include <numeric>

#include "shocknet/errors.hpp"
#include "shocknet/kernels.hpp"
#include "shocknet/partition.hpp"
#include "shocknet/signature.hpp"
#include "shocknet/simulation.hpp"

namespace shocknet {

PartitionTally& PartitionTally::operator+=(const PartitionTally& other) {
  for (std::size_t i = 0; i < death.size(); ++i) {
    death[i] += other.death[i];
    killing[i] += other.killing[i];
  }
  total += other.total;
  return *this;
}

namespace serial {

PartitionTally tally_ordered_partitions(const StructureFunction& sf, std::size_t limit) {
  const std::size_t n = sf.link_count();
  PartitionTally tally(n);
  enumerate_ordered_partitions(
      n,
      [&](const OrderedPartition& pi) {
        ++tally.death[death_number(sf, pi) - 1];
        ++tally.killing[killing_shock_index(sf, pi) - 1];
        ++tally.total;
      },
      limit);
  return tally;
}

PartitionTally tally_sampled_partitions(const StructureFunction& sf, std::uint64_t trials,
                                        std::uint64_t seed) {
  const std::size_t n = sf.link_count();
  const OrderedPartitionSampler sampler(n);
  PartitionTally tally(n);
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    const auto pi = sampler(rng);
    ++tally.death[death_number(sf, pi) - 1];
    ++tally.killing[killing_shock_index(sf, pi) - 1];
    ++tally.total;
  }
  return tally;
}

std::vector<std::uint64_t> tally_permutations(const StructureFunction& sf) {
  const std::size_t n = sf.link_count();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint64_t> counts(n, 0);
  do {
    LinkMask failed = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      failed |= LinkMask{1} << order[pos];
      if (sf.cut(failed)) {
        ++counts[pos];
        break;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return counts;
}

std::vector<double> simulate_lifetimes(const LifetimeSimulator& sim, std::uint64_t trials,
                                       std::uint64_t seed) {
  std::vector<double> out(trials);
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    out[i] = sim(rng);
  }
  return out;
}

}  // namespace serial

}  // namespace shocknet
