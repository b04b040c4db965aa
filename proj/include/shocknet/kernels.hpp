#pragma once

// Hot loops of the toolkit, each in two builds: `serial` is the plain
// reference used by tests, `parallel` is the OpenMP version used by the
// public API. Both must produce identical results.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "shocknet/network.hpp"

namespace shocknet {

class LifetimeSimulator;

/// Counts of death number and killing-shock index, both indexed 1..n at [i-1].
struct PartitionTally {
  std::vector<std::uint64_t> death;
  std::vector<std::uint64_t> killing;
  std::uint64_t total = 0;

  explicit PartitionTally(std::size_t n = 0) : death(n, 0), killing(n, 0) {}
  PartitionTally& operator+=(const PartitionTally& other);
};

namespace serial {

/// Visits every ordered partition and evaluates it directly.
PartitionTally tally_ordered_partitions(const StructureFunction& sf, std::size_t limit);
PartitionTally tally_sampled_partitions(const StructureFunction& sf, std::uint64_t trials,
                                        std::uint64_t seed);
/// Classical failure-index counts over all n! permutations.
std::vector<std::uint64_t> tally_permutations(const StructureFunction& sf);
std::vector<double> simulate_lifetimes(const LifetimeSimulator& sim, std::uint64_t trials,
                                       std::uint64_t seed);

}  // namespace serial

namespace parallel {

/// Splits on the first block; once a prefix is a cut the remaining links
/// contribute n*(rest) partitions with identical (M, r), so they are counted
/// in one step.
PartitionTally tally_ordered_partitions(const StructureFunction& sf, std::size_t limit);
PartitionTally tally_sampled_partitions(const StructureFunction& sf, std::uint64_t trials,
                                        std::uint64_t seed);
std::vector<std::uint64_t> tally_permutations(const StructureFunction& sf);
std::vector<double> simulate_lifetimes(const LifetimeSimulator& sim, std::uint64_t trials,
                                       std::uint64_t seed);

}  // namespace parallel

}  // namespace shocknet
