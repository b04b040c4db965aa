#include "shocknet/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/random/uniform_int_distribution.hpp>

namespace shocknet {

namespace {

LinkMask mask_of(std::size_t n, const std::vector<int>& block) {
  LinkMask m = 0;
  for (int id : block) {
    if (id < 1 || static_cast<std::size_t>(id) > n)
      throw ValidationError("link id " + std::to_string(id) + " outside 1.." + std::to_string(n));
    const LinkMask bit = LinkMask{1} << (id - 1);
    if (m & bit) throw ValidationError("link id " + std::to_string(id) + " repeated in a block");
    m |= bit;
  }
  return m;
}

OrderedPartition build(std::size_t n, const std::vector<std::vector<int>>& blocks) {
  if (n == 0 || n > kMaxLinks) throw ValidationError("partition size must be in 1..64");
  OrderedPartition p;
  p.n = n;
  LinkMask seen = 0;
  for (const auto& b : blocks) {
    const LinkMask m = mask_of(n, b);
    if (m == 0) throw ValidationError("empty block in ordered partition");
    if (seen & m) throw ValidationError("blocks of an ordered partition must be disjoint");
    seen |= m;
    p.blocks.push_back(m);
  }
  const LinkMask full = n == 64 ? ~LinkMask{0} : (LinkMask{1} << n) - 1;
  if (seen != full) throw ValidationError("blocks do not cover all links");
  return p;
}

}  // namespace

OrderedPartition OrderedPartition::from_blocks(
    std::size_t n, std::initializer_list<std::initializer_list<int>> blocks) {
  std::vector<std::vector<int>> v;
  for (const auto& b : blocks) v.emplace_back(b);
  return build(n, v);
}

OrderedPartition OrderedPartition::from_blocks(std::size_t n,
                                               const std::vector<std::vector<int>>& blocks) {
  return build(n, blocks);
}

std::string OrderedPartition::to_string() const {
  std::string out = "(";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += ',';
    const bool multi = std::popcount(blocks[b]) > 1;
    if (multi) out += '{';
    bool first = true;
    for (LinkMask m = blocks[b]; m; m &= m - 1) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(std::countr_zero(m) + 1);
    }
    if (multi) out += '}';
  }
  return out + ")";
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt count_ordered_partitions(std::size_t n) {
  if (n == 0) throw ValidationError("count_ordered_partitions requires n >= 1");
  BigInt total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    // Surjections of n labeled objects onto j labeled boxes.
    BigInt onto = 0;
    for (std::size_t k = 0; k <= j; ++k) {
      BigInt term = binomial(j, k) * boost::multiprecision::pow(BigInt(j - k), static_cast<unsigned>(n));
      if (k % 2) onto -= term;
      else onto += term;
    }
    total += onto;
  }
  return total;
}

std::vector<BigInt> ordered_partition_counts(std::size_t n) {
  std::vector<BigInt> f(n + 1);
  f[0] = 1;
  for (std::size_t m = 1; m <= n; ++m)
    for (std::size_t k = 1; k <= m; ++k) f[m] += binomial(m, k) * f[m - k];
  return f;
}

BigInt count_ordered_partitions_recurrence(std::size_t n) {
  if (n == 0) throw ValidationError("count_ordered_partitions requires n >= 1");
  return ordered_partition_counts(n).back();
}

namespace detail {

void check_enumeration_limit(std::size_t n, std::size_t limit) {
  if (n == 0) throw ValidationError("ordered partitions require n >= 1");
  if (n > limit)
    throw LimitError("exact enumeration of ordered partitions refused for n=" + std::to_string(n) +
                     " (limit " + std::to_string(limit) + "); use the Monte Carlo estimator");
}

}  // namespace detail

OrderedPartitionSampler::OrderedPartitionSampler(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxLinks) throw ValidationError("sampler requires 1 <= n <= 64");
  const auto counts = ordered_partition_counts(n);
  const BigInt limit = std::numeric_limits<std::uint64_t>::max();
  small_weights_.resize(n + 1);
  big_weights_.resize(n + 1);
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<BigInt> w(m);
    for (std::size_t k = 1; k <= m; ++k) w[k - 1] = binomial(m, k) * counts[m - k];
    if (counts[m] <= limit) {
      for (const auto& x : w) small_weights_[m].push_back(x.convert_to<std::uint64_t>());
    } else {
      big_weights_[m] = std::move(w);
    }
  }
}

std::size_t OrderedPartitionSampler::draw_block_size(std::size_t m, Rng& rng) const {
  if (!small_weights_[m].empty()) {
    const auto& w = small_weights_[m];
    const std::uint64_t total = std::accumulate(w.begin(), w.end(), std::uint64_t{0});
    std::uint64_t u = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (u < w[k]) return k + 1;
      u -= w[k];
    }
    return w.size();
  }
  const auto& w = big_weights_[m];
  const BigInt total = std::accumulate(w.begin(), w.end(), BigInt(0));
  BigInt u = boost::random::uniform_int_distribution<BigInt>(0, total - 1)(rng);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (u < w[k]) return k + 1;
    u -= w[k];
  }
  return w.size();
}

OrderedPartition OrderedPartitionSampler::operator()(Rng& rng) const {
  OrderedPartition p;
  p.n = n_;
  std::vector<int> pool(n_);
  std::iota(pool.begin(), pool.end(), 0);
  while (!pool.empty()) {
    const std::size_t k = draw_block_size(pool.size(), rng);
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    LinkMask block = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = std::uniform_int_distribution<std::size_t>(i, pool.size() - 1)(rng);
      std::swap(pool[i], pool[j]);
      block |= LinkMask{1} << pool[i];
    }
    pool.erase(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    p.blocks.push_back(block);
  }
  return p;
}

OrderedPartition sample_ordered_partition(std::size_t n, Rng& rng) {
  return OrderedPartitionSampler(n)(rng);
}

}  // namespace shocknet
