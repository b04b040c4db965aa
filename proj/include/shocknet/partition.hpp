#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "shocknet/errors.hpp"
#include "shocknet/network.hpp"
#include "shocknet/random.hpp"
#include "shocknet/rational.hpp"

namespace shocknet {

/// Largest n for which exact enumeration over ordered partitions is attempted
/// by default (n*(10) = 102,247,563).
inline constexpr std::size_t kDefaultEnumerationLimit = 10;

/// Ordered sequence of nonempty disjoint blocks covering links {1..n}; block j
/// holds the links that fail together at the j-th failure event.
struct OrderedPartition {
  std::size_t n = 0;
  std::vector<LinkMask> blocks;

  /// Builds from explicit link-id blocks; throws ValidationError unless the
  /// blocks are nonempty, disjoint and cover exactly {1..n}.
  static OrderedPartition from_blocks(std::size_t n,
                                      std::initializer_list<std::initializer_list<int>> blocks);
  static OrderedPartition from_blocks(std::size_t n, const std::vector<std::vector<int>>& blocks);

  std::size_t block_count() const noexcept { return blocks.size(); }

  /// Tabular notation, e.g. "({1,3},2)".
  std::string to_string() const;

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

/// n* = sum_{j=1}^{n} sum_{k=0}^{j} C(j,k)(-1)^k (j-k)^n, the number of ways to
/// distribute n labeled links over j nonempty labeled shocks, summed over j.
BigInt count_ordered_partitions(std::size_t n);

/// Same count from n*(m) = sum_{k=1}^{m} C(m,k) n*(m-k), n*(0) = 1.
BigInt count_ordered_partitions_recurrence(std::size_t n);

/// n*(0..n) by the recurrence.
std::vector<BigInt> ordered_partition_counts(std::size_t n);

BigInt binomial(std::size_t n, std::size_t k);

namespace detail {

// Depth-first walk: first block chosen among the nonempty subsets of the
// remaining links in lexicographic order, then recursion on the rest.
template <class Visitor>
class PartitionWalker {
 public:
  PartitionWalker(std::size_t n, Visitor& visit) : visit_(visit) { partition_.n = n; }

  void walk(LinkMask remaining) {
    if (remaining == 0) {
      visit_(static_cast<const OrderedPartition&>(partition_));
      return;
    }
    std::array<int, 64> elems{};
    int count = 0;
    for (LinkMask m = remaining; m; m &= m - 1) elems[count++] = std::countr_zero(m);
    lex_subsets(remaining, elems, count, 0, 0);
  }

 private:
  void lex_subsets(LinkMask remaining, const std::array<int, 64>& elems, int count, int start,
                   LinkMask current) {
    for (int i = start; i < count; ++i) {
      const LinkMask block = current | (LinkMask{1} << elems[i]);
      partition_.blocks.push_back(block);
      walk(remaining & ~block);
      partition_.blocks.pop_back();
      lex_subsets(remaining, elems, count, i + 1, block);
    }
  }

  Visitor& visit_;
  OrderedPartition partition_;
};

void check_enumeration_limit(std::size_t n, std::size_t limit);

}  // namespace detail

/// Streams every ordered partition of {1..n} exactly once, in deterministic
/// order (first block by lexicographic subset order, then recursively).
/// Refuses with LimitError when n exceeds `limit`; sample instead.
template <class Visitor>
void enumerate_ordered_partitions(std::size_t n, Visitor&& visit,
                                  std::size_t limit = kDefaultEnumerationLimit) {
  detail::check_enumeration_limit(n, limit);
  detail::PartitionWalker<std::remove_reference_t<Visitor>> walker(n, visit);
  walker.walk(n == 64 ? ~LinkMask{0} : (LinkMask{1} << n) - 1);
}

/// Uniform sampler over the n* ordered partitions of {1..n}. The first block
/// size k is drawn with probability C(m,k) n*(m-k) / n*(m) using exact integer
/// weights, the block itself is a uniform k-subset, and the rest recurses.
class OrderedPartitionSampler {
 public:
  explicit OrderedPartitionSampler(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  OrderedPartition operator()(Rng& rng) const;

 private:
  std::size_t draw_block_size(std::size_t m, Rng& rng) const;

  std::size_t n_;
  // small_weights_[m][k-1] = C(m,k) n*(m-k), for m with n*(m) < 2^64.
  std::vector<std::vector<std::uint64_t>> small_weights_;
  std::vector<std::vector<BigInt>> big_weights_;
};

OrderedPartition sample_ordered_partition(std::size_t n, Rng& rng);

}  // namespace shocknet
