#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "shocknet/errors.hpp"
#include "shocknet/partition.hpp"

using namespace shocknet;

namespace {

std::uint64_t enumerated_count(std::size_t n) {
  std::uint64_t count = 0;
  enumerate_ordered_partitions(n, [&](const OrderedPartition&) { ++count; });
  return count;
}

std::vector<std::string> enumerated_strings(std::size_t n) {
  std::vector<std::string> out;
  enumerate_ordered_partitions(n, [&](const OrderedPartition& p) { out.push_back(p.to_string()); });
  return out;
}

}  // namespace

TEST_CASE("ordered partition counts") {
  const std::uint64_t expected[] = {1, 3, 13, 75, 541, 4683, 47293, 545835};
  for (std::size_t n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(count_ordered_partitions(n) == expected[n - 1]);
    CHECK(count_ordered_partitions_recurrence(n) == expected[n - 1]);
    CHECK(enumerated_count(n) == expected[n - 1]);
  }
  CHECK_THROWS_AS(count_ordered_partitions(0), ValidationError);
  CHECK(count_ordered_partitions(30) == count_ordered_partitions_recurrence(30));
  CHECK(count_ordered_partitions(20) == BigInt("2677687796244384203115"));
}

TEST_CASE("ordered partition count table") {
  const auto table = ordered_partition_counts(5);
  REQUIRE(table.size() == 6);
  CHECK(table[0] == 1);
  CHECK(table[5] == 541);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("small enumerations") {
  CHECK(enumerated_strings(1) == std::vector<std::string>{"(1)"});
  const auto two = enumerated_strings(2);
  CHECK(std::set<std::string>(two.begin(), two.end()) == std::set<std::string>{"(1,2)", "(2,1)", "({1,2})"});
  const auto three = enumerated_strings(3);
  const std::set<std::string> table1{"(1,2,3)",   "(1,3,2)",   "(2,1,3)",   "(2,3,1)",   "(3,1,2)",
                                     "(3,2,1)",   "({1,3},2)", "({2,3},1)", "({1,2},3)", "(3,{1,2})",
                                     "(2,{1,3})", "(1,{2,3})", "({1,2,3})"};
  CHECK(three.size() == 13);
  CHECK(std::set<std::string>(three.begin(), three.end()) == table1);
}

TEST_CASE("enumeration yields distinct valid partitions") {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::set<std::vector<LinkMask>> seen;
    const LinkMask full = (LinkMask{1} << n) - 1;
    bool valid = true;
    enumerate_ordered_partitions(n, [&](const OrderedPartition& p) {
      LinkMask uni = 0;
      for (LinkMask b : p.blocks) {
        if (b == 0 || (uni & b)) valid = false;
        uni |= b;
      }
      if (uni != full || p.block_count() < 1 || p.block_count() > n) valid = false;
      seen.insert(p.blocks);
    });
    CHECK(valid);
    CHECK(seen.size() == count_ordered_partitions(n).convert_to<std::size_t>());
  }
}

TEST_CASE("enumeration limit refuses and points at sampling") {
  CHECK_THROWS_WITH_AS(enumerate_ordered_partitions(11, [](const OrderedPartition&) {}),
                       doctest::Contains("Monte Carlo"), LimitError);
  CHECK_NOTHROW(enumerate_ordered_partitions(3, [](const OrderedPartition&) {}, 3));
  CHECK_THROWS_AS(enumerate_ordered_partitions(4, [](const OrderedPartition&) {}, 3), LimitError);
}

TEST_CASE("from_blocks validation and notation") {
  const auto p = OrderedPartition::from_blocks(3, {{1, 3}, {2}});
  CHECK(p.to_string() == "({1,3},2)");
  CHECK(p.block_count() == 2);
  CHECK(OrderedPartition::from_blocks(3, {{1, 2, 3}}).to_string() == "({1,2,3})");
  CHECK_THROWS_AS(OrderedPartition::from_blocks(3, {{1, 3}}), ValidationError);
  CHECK_THROWS_AS(OrderedPartition::from_blocks(3, {{1, 3}, {3, 2}}), ValidationError);
  CHECK_THROWS_AS(OrderedPartition::from_blocks(3, {{1, 3}, {}, {2}}), ValidationError);
  CHECK_THROWS_AS(OrderedPartition::from_blocks(3, {{1, 4}, {2, 3}}), ValidationError);
}

TEST_CASE("sampler: n=1 is always the single block") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(sample_ordered_partition(1, rng).to_string() == "(1)");
}

TEST_CASE("sampler: n=3 is uniform over the 13 partitions") {
  const OrderedPartitionSampler sampler(3);
  Rng rng(2024);
  const int trials = 1'000'000;
  std::map<std::string, int> freq;
  for (int i = 0; i < trials; ++i) ++freq[sampler(rng).to_string()];
  CHECK(freq.size() == 13);
  const double p = 1.0 / 13;
  const double sd = std::sqrt(trials * p * (1 - p));
  double chi2 = 0;
  for (const auto& [key, count] : freq) {
    CAPTURE(key);
    CHECK(std::abs(count - trials * p) < 5 * sd);
    chi2 += (count - trials * p) * (count - trials * p) / (trials * p);
  }
  // 12 degrees of freedom; 99.99th percentile is about 39.
  CHECK(chi2 < 39.0);
}

TEST_CASE("sampler: first block marginals for n = 2..4") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const OrderedPartitionSampler sampler(n);
    Rng rng(99 + n);
    const int trials = 400'000;
    std::map<LinkMask, int> first;
    std::vector<int> sizes(n + 1, 0);
    for (int i = 0; i < trials; ++i) {
      const auto p = sampler(rng);
      ++first[p.blocks.front()];
      ++sizes[std::popcount(p.blocks.front())];
    }
    const double total = count_ordered_partitions(n).convert_to<double>();
    const auto counts = ordered_partition_counts(n);
    CHECK(first.size() == (std::size_t{1} << n) - 1);
    for (const auto& [block, count] : first) {
      const double expect = counts[n - std::popcount(block)].convert_to<double>() / total;
      CAPTURE(block);
      CHECK(std::abs(count / double(trials) - expect) < 5 * std::sqrt(expect * (1 - expect) / trials));
    }
    for (std::size_t k = 1; k <= n; ++k) {
      const double expect = (binomial(n, k) * counts[n - k]).convert_to<double>() / total;
      CAPTURE(k);
      CHECK(std::abs(sizes[k] / double(trials) - expect) <
            5 * std::sqrt(expect * (1 - expect) / trials) + 1e-12);
    }
  }
}

TEST_CASE("sampler above the 64-bit weight range") {
  const OrderedPartitionSampler sampler(25);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto p = sampler(rng);
    LinkMask uni = 0;
    for (LinkMask b : p.blocks) {
      REQUIRE(b != 0);
      REQUIRE((uni & b) == 0);
      uni |= b;
    }
    REQUIRE(uni == (LinkMask{1} << 25) - 1);
  }
}
