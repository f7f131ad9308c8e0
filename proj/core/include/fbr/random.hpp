#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fbr/expansion.hpp"

namespace fbr {

/// Counter-based SplitMix64: draw k of stream `seed` is
///   mix(seed + (k + 1) * 0x9E3779B97F4A7C15)
/// with the SplitMix64 finaliser. Uniforms are (u >> 11) * 2^-53; normal k
/// is Box-Muller (cosine branch) on uniforms 2k and 2k + 1.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// In [0, 1).
  double uniform(std::uint64_t counter) const noexcept;
  double uniform(std::uint64_t counter, double lo, double hi) const noexcept;
  double normal(std::uint64_t counter) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Random linear combinations of psi_1..psi_{N(R)}. Member m owns the normal
/// counters b + [0, 2^24) with b = m * 2^24 (uniform counters 2b onward).
/// Even members have a_j = normal(b + j - 1). Odd members are smoothed
/// point masses
///   a_j = g (1 - s_j^2/R^2)^kappa psi_j(x0),  g = normal(b + 1)
/// with x0 = min(0.9, 4 uniform(2b) / R) and kappa = uniform(2b + 1) mapped
/// onto [nu + 3/2, nu + 3].
std::vector<CoefficientVector> band_limited_family(const ZeroTable& table, double radius, std::size_t count,
                                                   std::uint64_t seed);

}  // namespace fbr
