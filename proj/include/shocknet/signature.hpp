#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "shocknet/network.hpp"
#include "shocknet/partition.hpp"
#include "shocknet/rational.hpp"

namespace shocknet {

enum class SignatureKind { classical, tie, fatal };

std::string_view to_string(SignatureKind kind);
SignatureKind parse_signature_kind(std::string_view name);

/// Exact probability vector over failure indices 1..n.
///   classical: s_i    = P(the i-th single failure downs the network), over n! permutations
///   tie:       s^t_i  = P(death number M = i), over n* ordered partitions
///   fatal:     s*_i   = P(the i-th fatal shock downs the network), over n* ordered partitions
struct SignatureVector {
  SignatureKind kind = SignatureKind::tie;
  std::vector<Rational> probabilities;

  std::size_t size() const noexcept { return probabilities.size(); }
  std::vector<double> as_doubles() const;
};

/// values[j] = sum_{i > j} s_i for j = 0..n-1; values[0] = 1.
struct TailVector {
  std::vector<Rational> values;

  std::size_t size() const noexcept { return values.size(); }
  std::vector<double> as_doubles() const;
};

TailVector tail(const SignatureVector& sig);

/// Checks entries are non-negative and sum to exactly one.
void validate(const SignatureVector& sig);

/// Builds count_i / total.
SignatureVector signature_from_counts(SignatureKind kind, const std::vector<std::uint64_t>& counts,
                                      std::uint64_t total);

/// Monte Carlo estimate of a signature: frequencies with binomial standard errors.
struct SignatureEstimate {
  SignatureKind kind = SignatureKind::tie;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> counts;
  std::vector<double> estimate;
  std::vector<double> standard_error;
};

/// Death number M of a failure ordering: links failed in blocks before the
/// killing block, plus the fewest links of the killing block that complete a
/// cut together with them. The killing block is the first block whose
/// cumulative union is a cut. Equals the minimum classical failure index over
/// all linear extensions of the partition.
int death_number(const StructureFunction& sf, const OrderedPartition& pi);
int death_number(const Network& net, const OrderedPartition& pi);

/// 1-based index of the killing block.
int killing_shock_index(const StructureFunction& sf, const OrderedPartition& pi);
int killing_shock_index(const Network& net, const OrderedPartition& pi);

struct SignatureOptions {
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
};

/// Largest n accepted by classical_signature (n! permutations).
inline constexpr std::size_t kClassicalLimit = 9;

SignatureVector t_signature(const Network& net, const SignatureOptions& options = {});
SignatureVector fatal_signature(const Network& net, const SignatureOptions& options = {});
SignatureVector classical_signature(const Network& net);

/// Frequency of each death number (or killing index) over `trials` uniform
/// ordered partitions; reproducible for a given seed.
SignatureEstimate t_signature_mc(const Network& net, std::uint64_t trials, std::uint64_t seed);
SignatureEstimate fatal_signature_mc(const Network& net, std::uint64_t trials, std::uint64_t seed);

namespace detail {

/// Fewest links of `block` whose failure on top of `prior` leaves a cut.
int min_completion(const StructureFunction& sf, LinkMask prior, LinkMask block);

/// Throws ValidationError if the intact network is already down.
void require_up_when_intact(const StructureFunction& sf);

}  // namespace detail

}  // namespace shocknet
