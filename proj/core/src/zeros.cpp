#include "fbr/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbr/errors.hpp"
#include "fbr/format.hpp"

namespace fbr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanStep = kPi / 8.0;
constexpr int kMaxScanSteps = 96;
constexpr double kNewtonTolerance = 1e-13;
constexpr int kNewtonIterations = 40;
constexpr int kBisectionSteps = 200;
constexpr double kCertificateWidth = 1e-9;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double mcmahon_guess(double nu, std::size_t j) {
  const double beta = (static_cast<double>(j) + 0.5 * nu - 0.25) * kPi;
  return beta - (4.0 * nu * nu - 1.0) / (8.0 * beta);
}

bool certified(Order order, double z) {
  const double left = bessel_j(order, z - 0.5 * kCertificateWidth);
  const double right = bessel_j(order, z + 0.5 * kCertificateWidth);
  return left == 0.0 || right == 0.0 || sign_of(left) != sign_of(right);
}

struct Bracket {
  double lo;
  double hi;
  double f_lo;
};

// J_nu(0+) > 0 for every nu > -1, so just past s_{j-1} the sign is (-1)^{j-1}.
Bracket bracket_zero(Order order, std::size_t j, double previous) {
  const int sign_after_previous = (j % 2 == 1) ? 1 : -1;
  const double just_after = previous + 1e-6;
  double start = mcmahon_guess(order.nu(), j) - 0.5 * kPi;
  if (start <= just_after || sign_of(bessel_j(order, start)) != sign_after_previous) {
    start = just_after;
  }
  double a = start;
  double fa = bessel_j(order, a);
  for (int step = 0; step < kMaxScanSteps; ++step) {
    const double b = a + kScanStep;
    const double fb = bessel_j(order, b);
    if (sign_of(fa) != sign_of(fb) || fb == 0.0) return {a, b, fa};
    a = b;
    fa = fb;
  }
  throw ZeroBracketError(j, "compute_zeros: no sign change found for zero index " + std::to_string(j));
}

double newton_in_bracket(Order order, Bracket br, double guess, bool& converged) {
  converged = false;
  double x = (guess > br.lo && guess < br.hi) ? guess : 0.5 * (br.lo + br.hi);
  for (int it = 0; it < kNewtonIterations; ++it) {
    const double fx = bessel_j(order, x);
    if (std::abs(fx) <= kNewtonTolerance) {
      // one polishing step; keep it only if it stays inside the bracket
      const double polished = x - fx / bessel_j_deriv(order, x);
      if (polished > br.lo && polished < br.hi) x = polished;
      converged = true;
      return x;
    }
    if (sign_of(fx) == sign_of(br.f_lo)) {
      br.lo = x;
      br.f_lo = fx;
    } else {
      br.hi = x;
    }
    const double next = x - fx / bessel_j_deriv(order, x);
    x = (next > br.lo && next < br.hi) ? next : 0.5 * (br.lo + br.hi);
  }
  return x;
}

double bisect(Order order, Bracket br) {
  for (int it = 0; it < kBisectionSteps; ++it) {
    const double mid = 0.5 * (br.lo + br.hi);
    if (mid <= br.lo || mid >= br.hi) break;
    const double fm = bessel_j(order, mid);
    if (fm == 0.0) return mid;
    if (sign_of(fm) == sign_of(br.f_lo)) {
      br.lo = mid;
      br.f_lo = fm;
    } else {
      br.hi = mid;
    }
  }
  return 0.5 * (br.lo + br.hi);
}

double locate_zero(Order order, std::size_t j, double previous) {
  const Bracket br = bracket_zero(order, j, previous);
  bool converged = false;
  const double z = newton_in_bracket(order, br, mcmahon_guess(order.nu(), j), converged);
  if (converged && certified(order, z)) return z;
  const double fallback = bisect(order, br);
  if (certified(order, fallback)) return fallback;
  throw ZeroBracketError(j, "compute_zeros: could not certify zero index " + std::to_string(j));
}

}  // namespace

ZeroTable::ZeroTable(Order order, std::vector<double> zeros, std::vector<double> normalizers)
    : order_(order), zeros_(std::move(zeros)), normalizers_(std::move(normalizers)) {}

ZeroTable ZeroTable::compute(Order order, std::size_t n) {
  if (n == 0) throw DomainError("compute_zeros: n must be >= 1");
  ZeroTable table(order, {}, {});
  table.append_until(n);
  return table;
}

ZeroTable ZeroTable::extended(std::size_t n) const {
  ZeroTable copy = *this;
  copy.append_until(n);
  return copy;
}

void ZeroTable::append_until(std::size_t n) {
  zeros_.reserve(n);
  normalizers_.reserve(n);
  const Order next_order(order_.nu() + 1.0);
  while (zeros_.size() < n) {
    const std::size_t j = zeros_.size() + 1;
    const double previous = zeros_.empty() ? 0.0 : zeros_.back();
    const double z = locate_zero(order_, j, previous);
    if (!(z > previous)) {
      throw ZeroBracketError(j, "compute_zeros: zero index " + std::to_string(j) + " not increasing");
    }
    zeros_.push_back(z);
    normalizers_.push_back(std::abs(bessel_j(next_order, z)));
    growth_constant_ = std::max(growth_constant_, z / static_cast<double>(j));
  }
}

double ZeroTable::zero(std::size_t j) const {
  if (j == 0 || j > zeros_.size()) throw TableTooShort("zero table: mode index out of range");
  return zeros_[j - 1];
}

double ZeroTable::normalizer(std::size_t j) const {
  if (j == 0 || j > zeros_.size()) throw TableTooShort("zero table: mode index out of range");
  return normalizers_[j - 1];
}

std::size_t ZeroTable::count_below(double radius) const {
  if (radius > zeros_.back()) {
    throw TableTooShort("count_zeros_below: radius " + to_shortest(radius) +
                        " exceeds last tabulated zero " + to_shortest(zeros_.back()));
  }
  return static_cast<std::size_t>(std::upper_bound(zeros_.begin(), zeros_.end(), radius) -
                                  zeros_.begin());
}

std::uint64_t ZeroTable::checksum() const {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  const auto mix = [&hash](const std::string& text) {
    for (const char c : text) {
      hash ^= static_cast<unsigned char>(c);
      hash *= 0x100000001b3ULL;
    }
    hash ^= static_cast<unsigned char>(',');
    hash *= 0x100000001b3ULL;
  };
  mix(to_shortest(order_.nu()));
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    mix(to_shortest(zeros_[i]));
    mix(to_shortest(normalizers_[i]));
  }
  return hash;
}

ZeroTable zeros_covering(Order order, double radius) {
  const double estimate = radius / kPi + 0.5 * std::abs(order.nu()) + 2.0;
  auto table = ZeroTable::compute(order, static_cast<std::size_t>(std::max(1.0, std::ceil(estimate))));
  while (table.last() < radius) table = table.extended(table.size() + 4);
  return table;
}

}  // namespace fbr
