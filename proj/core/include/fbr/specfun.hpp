#pragma once

#include <numbers>

namespace fbr {

/// Bessel order nu, restricted to nu > -1.
class Order {
 public:
  explicit Order(double nu);

  double nu() const noexcept { return nu_; }

  /// Phase constant D_nu = -(nu*pi/2 + pi/4) of the large-argument law
  /// J_nu(x) ~ sqrt(2/(pi x)) cos(x + D_nu).
  double phase() const noexcept {
    return -(nu_ * std::numbers::pi / 2.0 + std::numbers::pi / 4.0);
  }

  /// Exponent 2nu+1 of the measure d(mu_nu) = x^{2nu+1} dx.
  double measure_exponent() const noexcept { return 2.0 * nu_ + 1.0; }

  friend bool operator==(const Order&, const Order&) = default;

 private:
  double nu_;
};

/// Gamma function. Lanczos approximation for x >= 1/2, reflection below.
/// Throws PoleError at 0, -1, -2, ...
double gamma(double x);

/// J_nu(x) for x >= 0.
///
/// Three evaluation branches, all in binary64:
///   x <= 12                      ascending power series
///   12 < x < max(25, 2 nu^2)     Miller backward recurrence normalised
///                                by the Neumann series for (x/2)^nu
///   otherwise                    Hankel asymptotic expansion, summed
///                                until the terms stop decreasing
///
/// Throws DomainError for negative or non-finite x and SingularityError at
/// x = 0 when nu < 0.
double bessel_j(Order order, double x);

/// J_nu(z) / z^nu, the entire part of J_nu. Finite at z = 0 where it equals
/// 1 / (2^nu Gamma(nu+1)).
double bessel_j_scaled(Order order, double z);

/// J_nu'(x) for x > 0, from J_nu' = (nu/x) J_nu - J_{nu+1}.
double bessel_j_deriv(Order order, double x);

/// Weber function Y_nu(x), x > 0. Non-integer nu uses
/// (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi); integer nu takes the nu -> n
/// limit through a centred difference of the numerator in nu.
/// Validation only; absolute accuracy about 1e-8 on (0, 100].
double bessel_y(Order order, double x);

/// Cutoff Phi_nu(t) = t^{nu+1/2} for 0 < t < 2 and 1 for t >= 2.
double phi_aux(Order order, double t);

/// J_v(x) for any real non-integer v (or v > -1), x > 0. Orders below -1
/// are reached by downward recurrence from (frac, frac + 1).
double bessel_j_any_order(double v, double x);

struct SpecfunSelfTest {
  double max_series_recurrence_gap = 0.0;
  double max_recurrence_asymptotic_gap = 0.0;
  bool passed = false;
};

/// Compares neighbouring J_nu branches on both sides of each crossover for a
/// fixed set of orders. Passes when every gap is at most 1e-9.
SpecfunSelfTest specfun_self_test();

}  // namespace fbr
