#include "fbr/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fbr/errors.hpp"
#include "summation.hpp"

namespace fbr {

namespace {

constexpr double kPi = std::numbers::pi;

// Upper end of the power-series branch.
constexpr double kSeriesLimit = 8.0;

double asymptotic_limit(double nu) { return std::max(25.0, 2.0 * nu * nu); }

void require_finite_nonnegative(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(std::string(what) + ": argument must be finite and >= 0, got " +
                      std::to_string(x));
  }
}

// (x/2)^v / Gamma(v+1), guarded against overflow for large v.
double series_prefactor(double v, double x) {
  if (x == 0.0) return v == 0.0 ? 1.0 : 0.0;
  if (std::abs(v) < 60.0) return std::pow(0.5 * x, v) / gamma(v + 1.0);
  return std::exp(v * std::log(0.5 * x) - std::lgamma(v + 1.0));
}

// Sum_k (-z^2/4)^k / (k! (v+1)_k); the power series of
// Gamma(v+1) (2/z)^v J_v(z).
double reduced_series(double v, double z) {
  const double q = -0.25 * z * z;
  NeumaierSum sum;
  double term = 1.0;
  sum.add(term);
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (v + k));
    sum.add(term);
    if (std::abs(term) < 1e-17 * std::abs(sum.value()) && k > 0.5 * z) break;
  }
  return sum.value();
}

double series_branch(double v, double x) { return series_prefactor(v, x) * reduced_series(v, x); }

// Backward recurrence from order nu + M, normalised with
//   1 = sum_m c_m (2/x)^mu J_{mu+2m}(x),
//   c_0 = Gamma(mu+1),  c_m = (mu+2m) Gamma(mu+m) / m!,
// where mu = nu for nu >= 0 and mu = nu + 2 otherwise (Gamma(nu+1) is
// large near nu = -1 and the sum would cancel).
double recurrence_branch(double nu, double x) {
  const int offset = nu < 0.0 ? 2 : 0;
  const double mu = nu + offset;
  const int half = static_cast<int>(std::ceil((x + 30.0 + 10.0 * std::cbrt(x)) / 2.0));
  const int top = 2 * half + offset;

  std::vector<double> weight(static_cast<std::size_t>(half) + 1);
  const double base = std::exp(std::lgamma(mu + 1.0) + mu * std::log(2.0 / x));
  weight[0] = base;
  double g = base;  // Gamma(mu+m)/m! * (2/x)^mu
  for (int m = 1; m <= half; ++m) {
    if (m > 1) g *= (mu + m - 1.0) / m;
    weight[static_cast<std::size_t>(m)] = (mu + 2.0 * m) * g;
  }

  double f_next = 0.0;
  double f = 1e-300;
  NeumaierSum norm;
  norm.add(weight[static_cast<std::size_t>(half)] * f);
  for (int k = top; k >= 1; --k) {
    const double f_prev = 2.0 * (nu + k) / x * f - f_next;
    f_next = f;
    f = f_prev;
    const int shifted = k - 1 - offset;
    if (shifted >= 0 && shifted % 2 == 0) norm.add(weight[static_cast<std::size_t>(shifted / 2)] * f);
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      f_next *= 1e-250;
      norm.scale(1e-250);
    }
  }
  return f / norm.value();
}

struct HankelPQ {
  double p;
  double q;
};

HankelPQ hankel_pq(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double size = std::abs(term);
    if (size > previous) break;
    // sign pattern: P = a0 - a2 + a4 - ..., Q = a1 - a3 + a5 - ...
    const int phase = k % 4;
    if (phase == 1) q += term;
    if (phase == 2) p -= term;
    if (phase == 3) q -= term;
    if (phase == 0) p += term;
    if (size < 1e-17) break;
    previous = size;
  }
  return {p, q};
}

// cos and sin of x - (nu/2 + 1/4) pi without forming the shifted argument.
void shifted_trig(double nu, double x, double& cos_chi, double& sin_chi) {
  const double shift = (0.5 * nu + 0.25) * kPi;
  const double cx = std::cos(x), sx = std::sin(x);
  const double cs = std::cos(shift), ss = std::sin(shift);
  cos_chi = cx * cs + sx * ss;
  sin_chi = sx * cs - cx * ss;
}

double asymptotic_branch(double nu, double x) {
  const auto [p, q] = hankel_pq(nu, x);
  double c, s;
  shifted_trig(nu, x, c, s);
  return std::sqrt(2.0 / (kPi * x)) * (p * c - q * s);
}

double j_positive(double nu, double x) {
  if (x <= kSeriesLimit) return series_branch(nu, x);
  if (x < asymptotic_limit(nu)) return recurrence_branch(nu, x);
  return asymptotic_branch(nu, x);
}

bool is_integer(double v) { return v == std::nearbyint(v); }

}  // namespace

Order::Order(double nu) : nu_(nu) {
  if (!(nu > -1.0) || !std::isfinite(nu)) {
    throw DomainError("Order: nu must be finite and > -1, got " + std::to_string(nu));
  }
}

// Lanczos approximation, g = 7, n = 9. Coefficients from P. Godfrey's
// published table (the set used by Numerical Recipes 3rd ed. and many
// libm-free gamma implementations); relative accuracy about 1e-15.
double gamma(double x) {
  static constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  if (x <= 0.0 && is_integer(x)) {
    throw PoleError("gamma: pole at nonpositive integer " + std::to_string(x));
  }
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma(1.0 - x));

  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  // t^(z+1/2) e^-t split in two factors to delay overflow
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half_power * (half_power * std::exp(-t)) * series;
}

double bessel_j(Order order, double x) {
  require_finite_nonnegative(x, "bessel_j");
  const double nu = order.nu();
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw SingularityError("bessel_j: J_nu(0) diverges for nu < 0");
  }
  return j_positive(nu, x);
}

double bessel_j_scaled(Order order, double z) {
  require_finite_nonnegative(z, "bessel_j_scaled");
  const double nu = order.nu();
  if (z <= kSeriesLimit) {
    const double lead = std::abs(nu) < 60.0 ? 1.0 / (std::pow(2.0, nu) * gamma(nu + 1.0))
                                            : std::exp(-nu * std::log(2.0) - std::lgamma(nu + 1.0));
    return lead * reduced_series(nu, z);
  }
  return j_positive(nu, z) / std::pow(z, nu);
}

double bessel_j_deriv(Order order, double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("bessel_j_deriv: argument must be > 0, got " + std::to_string(x));
  }
  const double nu = order.nu();
  return nu / x * j_positive(nu, x) - j_positive(nu + 1.0, x);
}

double bessel_j_any_order(double v, double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("bessel_j_any_order: argument must be > 0");
  }
  if (v > -1.0) return j_positive(v, x);
  if (is_integer(v)) {
    const double n = -v;
    const double value = j_positive(n, x);
    return std::fmod(n, 2.0) == 0.0 ? value : -value;
  }
  // climb to a = v + k in (-1, 0], then recur downward k times
  const int k = static_cast<int>(std::floor(-1.0 - v)) + 1;
  double mu = v + k;
  double upper = j_positive(mu + 1.0, x);
  double current = j_positive(mu, x);
  for (int i = 0; i < k; ++i) {
    const double lower = 2.0 * mu / x * current - upper;
    upper = current;
    current = lower;
    mu -= 1.0;
  }
  return current;
}

double bessel_y(Order order, double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("bessel_y: argument must be > 0, got " + std::to_string(x));
  }
  const double nu = order.nu();
  const auto numerator = [x](double v) {
    return bessel_j_any_order(v, x) * std::cos(v * kPi) - bessel_j_any_order(-v, x);
  };
  if (!is_integer(nu)) return numerator(nu) / std::sin(nu * kPi);

  constexpr double kStep = 1e-5;
  const double slope = (numerator(nu + kStep) - numerator(nu - kStep)) / (2.0 * kStep);
  return slope / (kPi * std::cos(nu * kPi));
}

double phi_aux(Order order, double t) {
  if (!std::isfinite(t) || t <= 0.0) {
    throw DomainError("phi_aux: argument must be > 0, got " + std::to_string(t));
  }
  if (t < 2.0) return std::pow(t, order.nu() + 0.5);
  return 1.0;
}

SpecfunSelfTest specfun_self_test() {
  SpecfunSelfTest report;
  constexpr std::array<double, 6> kOrders = {-0.4, 0.0, 0.5, 1.3, 2.5, 3.7};
  constexpr std::array<double, 5> kOffsets = {-0.5, -0.1, 0.0, 0.1, 0.5};
  for (const double nu : kOrders) {
    for (const double dx : kOffsets) {
      const double xs = kSeriesLimit + dx;
      report.max_series_recurrence_gap =
          std::max(report.max_series_recurrence_gap,
                   std::abs(series_branch(nu, xs) - recurrence_branch(nu, xs)));
      const double xa = asymptotic_limit(nu) + dx;
      report.max_recurrence_asymptotic_gap =
          std::max(report.max_recurrence_asymptotic_gap,
                   std::abs(recurrence_branch(nu, xa) - asymptotic_branch(nu, xa)));
    }
  }
  report.passed =
      report.max_series_recurrence_gap <= 1e-9 && report.max_recurrence_asymptotic_gap <= 1e-9;
  return report;
}

}  // namespace fbr
