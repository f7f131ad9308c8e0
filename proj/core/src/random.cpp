#include "fbr/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fbr/errors.hpp"

namespace fbr {

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t counter, double lo, double hi) const noexcept {
  return lo + (hi - lo) * uniform(counter);
}

double CounterRng::normal(std::uint64_t counter) const noexcept {
  const double u1 = 1.0 - uniform(2 * counter);  // (0, 1]
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<CoefficientVector> band_limited_family(const ZeroTable& table, double radius, std::size_t count,
                                                   std::uint64_t seed) {
  const std::size_t modes = table.count_below(radius);
  if (modes == 0) throw DomainError("band_limited_family: R is below the first zero");
  const CounterRng rng(seed);
  const double nu = table.order().nu();
  std::vector<CoefficientVector> family;
  family.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    const std::uint64_t base = static_cast<std::uint64_t>(m) << 24;
    std::vector<double> a(modes);
    if (m % 2 == 0) {
      for (std::size_t j = 0; j < modes; ++j) a[j] = rng.normal(base + j);
    } else {
      const double x0 = std::min(0.9, 4.0 * rng.uniform(2 * base) / radius);
      const double kappa = rng.uniform(2 * base + 1, nu + 1.5, nu + 3.0);
      const double amplitude = rng.normal(base + 1);
      for (std::size_t j = 0; j < modes; ++j) {
        a[j] = amplitude * riesz_factor(table.zeros()[j], radius, kappa) * eval_psi(table, j + 1, x0);
      }
    }
    family.emplace_back(table.order(), System::psi, std::move(a));
  }
  return family;
}

}  // namespace fbr
