#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shocknet/network.hpp"
#include "shocknet/random.hpp"
#include "shocknet/reliability.hpp"
#include "shocknet/shock_model.hpp"
#include "shocknet/signature.hpp"

namespace shocknet {

/// model_faithful: the death number M (or the killing shock) is drawn from the
/// signature independently of the damage process.
/// mechanistic: each shock fails surviving links at random and the structure
/// function decides when the network goes down.
enum class SimMode { model_faithful, mechanistic };

std::string_view to_string(SimMode mode);
SimMode parse_sim_mode(std::string_view name);

struct SimConfig {
  FirstArrivalLaw law;
  DamageModel damage;
  SimMode mode = SimMode::model_faithful;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  /// Required for mechanistic mode; model-faithful mode derives the signature
  /// from it when `signature` is absent.
  std::optional<Network> network;
  /// Tie signature, or fatal signature with fatal damage.
  std::optional<SignatureVector> signature;

  std::string describe() const;
};

/// Arrival times up to `horizon`: theta_k = Lambda^{-1}(E_1 + ... + E_k) with
/// unit exponential E_i.
std::vector<double> sample_nhpp_arrivals(const FirstArrivalLaw& law, double horizon, Rng& rng);

/// One validated configuration, ready to draw lifetimes.
class LifetimeSimulator {
 public:
  explicit LifetimeSimulator(const SimConfig& cfg);

  /// One network lifetime; +infinity if the shock process stops before death.
  double operator()(Rng& rng) const;

  const SimConfig& config() const noexcept { return cfg_; }

 private:
  double model_faithful(Rng& rng) const;
  double mechanistic(Rng& rng) const;

  SimConfig cfg_;
  std::size_t n_ = 0;
  std::vector<double> signature_;  // model-faithful: P(M = i) or P(r = i), i = 1..n
  std::optional<StructureFunction> structure_;
};

double simulate_lifetime(const SimConfig& cfg, Rng& rng);

/// Fraction of trials with lifetime > t, with binomial standard errors.
/// Trial i always uses trial_rng(seed, i).
ReliabilityCurve mc_reliability_curve(const SimConfig& cfg, std::span<const double> grid);

}  // namespace shocknet
