#include <algorithm>
#include <bit>
#include <numeric>

#include "shocknet/errors.hpp"
#include "shocknet/kernels.hpp"
#include "shocknet/partition.hpp"
#include "shocknet/signature.hpp"
#include "shocknet/simulation.hpp"

namespace shocknet::parallel {

namespace {

// n*(m) fits in 64 bits up to m = 18.
constexpr std::size_t kMaxTallyLinks = 18;

class PrunedWalker {
 public:
  PrunedWalker(const StructureFunction& sf, const std::vector<std::uint64_t>& fubini,
               PartitionTally& tally)
      : sf_(sf), fubini_(fubini), tally_(tally) {}

  // `prior` is a non-cut union of the first `blocks` blocks.
  void extend(LinkMask prior, int blocks) {
    const LinkMask rest = sf_.full_mask() & ~prior;
    for (LinkMask block = rest; block; block = (block - 1) & rest) place(prior, block, blocks);
  }

  void place(LinkMask prior, LinkMask block, int blocks) {
    const LinkMask failed = prior | block;
    if (sf_.up(failed)) {
      extend(failed, blocks + 1);
      return;
    }
    // Every completion of the remaining links shares this (M, r).
    const auto remaining = static_cast<std::size_t>(std::popcount(sf_.full_mask() & ~failed));
    const std::uint64_t weight = fubini_[remaining];
    const int m = std::popcount(prior) + detail::min_completion(sf_, prior, block);
    tally_.death[m - 1] += weight;
    tally_.killing[blocks] += weight;
    tally_.total += weight;
  }

 private:
  const StructureFunction& sf_;
  const std::vector<std::uint64_t>& fubini_;
  PartitionTally& tally_;
};

}  // namespace

PartitionTally tally_ordered_partitions(const StructureFunction& sf, std::size_t limit) {
  const std::size_t n = sf.link_count();
  detail::check_enumeration_limit(n, limit);
  if (n > kMaxTallyLinks) throw LimitError("ordered-partition tallies overflow beyond 18 links");

  std::vector<std::uint64_t> fubini;
  for (const auto& f : ordered_partition_counts(n)) fubini.push_back(f.convert_to<std::uint64_t>());

  const LinkMask full = sf.full_mask();
  const auto first_blocks = static_cast<std::int64_t>(full);  // blocks 1..full
  PartitionTally total(n);
#pragma omp parallel
  {
    PartitionTally local(n);
    PrunedWalker walker(sf, fubini, local);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 1; b <= first_blocks; ++b) walker.place(0, static_cast<LinkMask>(b), 0);
#pragma omp critical
    total += local;
  }
  return total;
}

PartitionTally tally_sampled_partitions(const StructureFunction& sf, std::uint64_t trials,
                                        std::uint64_t seed) {
  const std::size_t n = sf.link_count();
  const OrderedPartitionSampler sampler(n);
  PartitionTally total(n);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel
  {
    PartitionTally local(n);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
      Rng rng = trial_rng(seed, static_cast<std::uint64_t>(i));
      const auto pi = sampler(rng);
      ++local.death[death_number(sf, pi) - 1];
      ++local.killing[killing_shock_index(sf, pi) - 1];
      ++local.total;
    }
#pragma omp critical
    total += local;
  }
  return total;
}

std::vector<std::uint64_t> tally_permutations(const StructureFunction& sf) {
  const auto n = static_cast<int>(sf.link_count());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n), 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(counts.size(), 0);
#pragma omp for schedule(dynamic, 1)
    for (int first = 0; first < n; ++first) {
      std::vector<int> rest;
      for (int i = 0; i < n; ++i)
        if (i != first) rest.push_back(i);
      const LinkMask head = LinkMask{1} << first;
      do {
        if (sf.cut(head)) {
          ++local[0];
          continue;
        }
        LinkMask failed = head;
        for (std::size_t pos = 0; pos < rest.size(); ++pos) {
          failed |= LinkMask{1} << rest[pos];
          if (sf.cut(failed)) {
            ++local[pos + 1];
            break;
          }
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
#pragma omp critical
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
  }
  return counts;
}

std::vector<double> simulate_lifetimes(const LifetimeSimulator& sim, std::uint64_t trials,
                                       std::uint64_t seed) {
  std::vector<double> out(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = sim(rng);
  }
  return out;
}

}  // namespace shocknet::parallel
