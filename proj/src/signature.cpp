#include "shocknet/signature.hpp"

#include <bit>
#include <cmath>

#include "shocknet/errors.hpp"
#include "shocknet/kernels.hpp"

namespace shocknet {

std::string_view to_string(SignatureKind kind) {
  switch (kind) {
    case SignatureKind::classical: return "classical";
    case SignatureKind::tie: return "tie";
    case SignatureKind::fatal: return "fatal";
  }
  return "?";
}

SignatureKind parse_signature_kind(std::string_view name) {
  if (name == "classical") return SignatureKind::classical;
  if (name == "tie") return SignatureKind::tie;
  if (name == "fatal") return SignatureKind::fatal;
  throw ValidationError("unknown signature kind '" + std::string(name) + "'");
}

std::vector<double> SignatureVector::as_doubles() const {
  std::vector<double> out;
  out.reserve(probabilities.size());
  for (const auto& p : probabilities) out.push_back(to_double(p));
  return out;
}

std::vector<double> TailVector::as_doubles() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

TailVector tail(const SignatureVector& sig) {
  TailVector t;
  t.values.resize(sig.size());
  Rational acc = 0;
  for (std::size_t j = sig.size(); j-- > 0;) {
    t.values[j] = acc + sig.probabilities[j];
    acc = t.values[j];
  }
  return t;
}

void validate(const SignatureVector& sig) {
  if (sig.probabilities.empty()) throw ValidationError("empty signature");
  Rational total = 0;
  for (const auto& p : sig.probabilities) {
    if (p < 0) throw ValidationError("negative signature entry");
    total += p;
  }
  if (total != 1) throw ValidationError("signature entries sum to " + to_string(total) + ", not 1");
}

SignatureVector signature_from_counts(SignatureKind kind, const std::vector<std::uint64_t>& counts,
                                      std::uint64_t total) {
  if (total == 0) throw ValidationError("signature total must be positive");
  SignatureVector sig{kind, {}};
  sig.probabilities.reserve(counts.size());
  for (auto c : counts) sig.probabilities.emplace_back(BigInt(c), BigInt(total));
  return sig;
}

namespace detail {

int min_completion(const StructureFunction& sf, LinkMask prior, LinkMask block) {
  int best = std::popcount(block);
  // All nonempty submasks of the block.
  for (LinkMask sub = block; sub; sub = (sub - 1) & block) {
    const int size = std::popcount(sub);
    if (size < best && sf.cut(prior | sub)) {
      best = size;
      if (best == 1) break;
    }
  }
  return best;
}

void require_up_when_intact(const StructureFunction& sf) {
  if (!sf.up(0)) throw ValidationError("network is down with no failed links");
}

}  // namespace detail

namespace {

void check_partition(const StructureFunction& sf, const OrderedPartition& pi) {
  if (pi.n != sf.link_count())
    throw ValidationError("partition covers " + std::to_string(pi.n) + " links, network has " +
                          std::to_string(sf.link_count()));
}

}  // namespace

int killing_shock_index(const StructureFunction& sf, const OrderedPartition& pi) {
  check_partition(sf, pi);
  LinkMask failed = 0;
  for (std::size_t b = 0; b < pi.blocks.size(); ++b) {
    failed |= pi.blocks[b];
    if (sf.cut(failed)) return static_cast<int>(b + 1);
  }
  throw NumericError("all links failed but terminals are still connected");
}

int death_number(const StructureFunction& sf, const OrderedPartition& pi) {
  check_partition(sf, pi);
  LinkMask prior = 0;
  for (LinkMask block : pi.blocks) {
    if (sf.cut(prior | block))
      return std::popcount(prior) + detail::min_completion(sf, prior, block);
    prior |= block;
  }
  throw NumericError("all links failed but terminals are still connected");
}

int killing_shock_index(const Network& net, const OrderedPartition& pi) {
  return killing_shock_index(StructureFunction(net), pi);
}

int death_number(const Network& net, const OrderedPartition& pi) {
  return death_number(StructureFunction(net), pi);
}

SignatureVector t_signature(const Network& net, const SignatureOptions& options) {
  const StructureFunction sf(net);
  detail::require_up_when_intact(sf);
  const auto tally = parallel::tally_ordered_partitions(sf, options.enumeration_limit);
  return signature_from_counts(SignatureKind::tie, tally.death, tally.total);
}

SignatureVector fatal_signature(const Network& net, const SignatureOptions& options) {
  const StructureFunction sf(net);
  detail::require_up_when_intact(sf);
  const auto tally = parallel::tally_ordered_partitions(sf, options.enumeration_limit);
  return signature_from_counts(SignatureKind::fatal, tally.killing, tally.total);
}

SignatureVector classical_signature(const Network& net) {
  if (net.link_count() > kClassicalLimit)
    throw LimitError("classical signature enumerates n! permutations; n=" +
                     std::to_string(net.link_count()) + " exceeds the limit of " +
                     std::to_string(kClassicalLimit));
  const StructureFunction sf(net);
  detail::require_up_when_intact(sf);
  const auto counts = parallel::tally_permutations(sf);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return signature_from_counts(SignatureKind::classical, counts, total);
}

namespace {

SignatureEstimate estimate_from(SignatureKind kind, const std::vector<std::uint64_t>& counts,
                                std::uint64_t trials) {
  SignatureEstimate est;
  est.kind = kind;
  est.trials = trials;
  est.counts = counts;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(trials);
    est.estimate.push_back(p);
    est.standard_error.push_back(std::sqrt(p * (1 - p) / static_cast<double>(trials)));
  }
  return est;
}

PartitionTally sampled_tally(const Network& net, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw ValidationError("trials must be at least 1");
  const StructureFunction sf(net);
  detail::require_up_when_intact(sf);
  return parallel::tally_sampled_partitions(sf, trials, seed);
}

}  // namespace

SignatureEstimate t_signature_mc(const Network& net, std::uint64_t trials, std::uint64_t seed) {
  return estimate_from(SignatureKind::tie, sampled_tally(net, trials, seed).death, trials);
}

SignatureEstimate fatal_signature_mc(const Network& net, std::uint64_t trials, std::uint64_t seed) {
  return estimate_from(SignatureKind::fatal, sampled_tally(net, trials, seed).killing, trials);
}

}  // namespace shocknet
