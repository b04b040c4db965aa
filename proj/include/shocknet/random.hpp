#pragma once

#include <cstdint>
#include <random>

namespace shocknet {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent generator for trial `stream` of a run seeded with `seed`:
/// mt19937_64 seeded with splitmix64(seed ^ splitmix64(stream)). Every
/// Monte Carlo routine draws trial i from trial_rng(seed, i), so results do
/// not depend on the thread count.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(seed ^ splitmix64(stream)));
}

}  // namespace shocknet
