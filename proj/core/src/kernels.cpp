#include "fbr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbr/errors.hpp"
#include "fbr/expansion.hpp"
#include "summation.hpp"

namespace fbr {

namespace {

void check_point(const char* who, double v, bool allow_zero) {
  const bool ok = allow_zero ? (v >= 0.0 && v <= 1.0) : (v > 0.0 && v <= 1.0);
  if (!ok) throw DomainError(std::string(who) + ": point outside the unit interval");
}

void check_radius(const char* who, double radius, double delta) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError(std::string(who) + ": R must be > 0");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError(std::string(who) + ": delta must be >= 0");
}

std::vector<double> riesz_factors(const ZeroTable& table, double radius, double delta) {
  const std::size_t modes = table.count_below(radius);
  std::vector<double> factors(modes);
  for (std::size_t j = 0; j < modes; ++j) factors[j] = riesz_factor(table.zeros()[j], radius, delta);
  return factors;
}

// sum_j f_j (u_j v_j); the product u_j v_j keeps the sum symmetric in (u, v)
double weighted_dot(std::span<const double> factors, std::span<const double> u, std::span<const double> v) {
  NeumaierSum sum;
  for (std::size_t j = 0; j < factors.size(); ++j) sum.add(factors[j] * (u[j] * v[j]));
  return sum.value();
}

double symmetric_kernel(const ZeroTable& table, System system, double delta, double radius, double x,
                        double y) {
  const auto factors = riesz_factors(table, radius, delta);
  const auto u = mode_values(table, system, factors.size(), x);
  const auto v = mode_values(table, system, factors.size(), y);
  return weighted_dot(factors, u, v);
}

}  // namespace

std::string_view region_name(Region region) {
  switch (region) {
    case Region::A1: return "A1";
    case Region::A2: return "A2";
    case Region::A3: return "A3";
    case Region::A4: return "A4";
    case Region::A5: return "A5";
  }
  return "?";
}

Region classify_region(double radius, double x, double y) {
  const double near = 4.0 / radius;
  if (x <= near && y <= near) return Region::A1;
  if (std::abs(x - y) <= 2.0 / radius) return Region::A2;
  if (x >= near && y <= 0.5 * x) return Region::A3;
  if (y >= near && x <= 0.5 * y) return Region::A4;
  return Region::A5;
}

double kernel(const ZeroTable& table, double delta, double radius, double x, double y) {
  check_radius("kernel", radius, delta);
  check_point("kernel", x, false);
  check_point("kernel", y, false);
  return symmetric_kernel(table, System::phi, delta, radius, x, y);
}

double kernel_mu(const ZeroTable& table, double delta, double radius, double x, double y) {
  check_radius("kernel_mu", radius, delta);
  check_point("kernel_mu", x, true);
  check_point("kernel_mu", y, true);
  return symmetric_kernel(table, System::psi, delta, radius, x, y);
}

double kernel_bound(Order order, double delta, double radius, double x, double y) {
  const double nu = order.nu();
  switch (classify_region(radius, x, y)) {
    case Region::A1:
      return std::pow(x * y, nu + 0.5) * std::pow(radius, 2.0 * (nu + 1.0));
    case Region::A2:
      return radius;
    default:
      return phi_aux(order, radius * x) * phi_aux(order, radius * y) /
             (std::pow(radius, delta) * std::pow(std::abs(x - y), delta + 1.0));
  }
}

std::optional<double> BoundSweep::variation(Region region) const {
  const auto index = static_cast<std::size_t>(region);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& row : rows) {
    const auto& stat = row.regions[index];
    if (!stat.sampled() || !(stat.max_ratio > 0.0)) return std::nullopt;
    lo = first ? stat.max_ratio : std::min(lo, stat.max_ratio);
    hi = first ? stat.max_ratio : std::max(hi, stat.max_ratio);
    first = false;
  }
  if (first) return std::nullopt;
  return hi / lo;
}

BoundSweep bound_ratio_sweep(const ZeroTable& table, double delta, std::span<const double> radii,
                             std::span<const double> grid, bool keep_samples) {
  BoundSweep sweep;
  if (radii.empty() || grid.empty()) return sweep;
  for (const double x : grid) check_point("bound_ratio_sweep", x, false);
  const double top = *std::max_element(radii.begin(), radii.end());
  const std::size_t modes = table.count_below(top);

  std::vector<std::vector<double>> phi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) phi[i] = mode_values(table, System::phi, modes, grid[i]);

  for (const double radius : radii) {
    check_radius("bound_ratio_sweep", radius, delta);
    const auto factors = riesz_factors(table, radius, delta);
    BoundSweepRow row{radius, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[i] == grid[k]) continue;
        const double x = grid[i];
        const double y = grid[k];
        const double value = weighted_dot(factors, phi[i], phi[k]);
        const double bound = kernel_bound(table.order(), delta, radius, x, y);
        const Region region = classify_region(radius, x, y);
        auto& stat = row.regions[static_cast<std::size_t>(region)];
        ++stat.samples;
        stat.max_ratio = std::max(stat.max_ratio, std::abs(value) / bound);
        if (keep_samples) sweep.samples.push_back({x, y, radius, value, bound, region});
      }
    }
    sweep.rows.push_back(row);
  }
  return sweep;
}

double kernel_zero_leading(Order order, double delta, double radius, double y) {
  const double nu = order.nu();
  if (!(nu > -0.5)) throw DomainError("kernel_zero_leading: needs nu > -1/2");
  if (!(delta > 0.0)) throw DomainError("kernel_zero_leading: needs delta > 0");
  check_radius("kernel_zero_leading", radius, delta);
  check_point("kernel_zero_leading", y, true);
  const double scale = std::pow(2.0, delta - nu) * gamma(delta + 1.0) / gamma(nu + 1.0);
  return scale * std::pow(radius, 2.0 * (nu + 1.0)) * bessel_j_scaled(Order(nu + delta + 1.0), y * radius);
}

double kernel_zero_remainder(const ZeroTable& table, double delta, double radius, double y) {
  const double leading = kernel_zero_leading(table.order(), delta, radius, y);
  return kernel_mu(table, delta, radius, 0.0, y) - leading;
}

double remainder_bound(Order order, double delta, double radius, double y) {
  const double nu = order.nu();
  if (y * radius <= 1.0) return std::pow(radius, 2.0 * nu - delta + 1.0);
  return std::pow(radius, nu - delta + 0.5) * std::pow(y, -(nu + 0.5));
}

RemainderScaling remainder_scaling(const ZeroTable& table, double delta, std::span<const double> radii,
                                   std::span<const double> y_grid) {
  RemainderScaling out;
  const double nu = table.order().nu();
  for (const double radius : radii) {
    const auto factors = riesz_factors(table, radius, delta);
    const auto at_zero = mode_values(table, System::psi, factors.size(), 0.0);
    double far = 0.0, near = 0.0;
    for (const double y : y_grid) {
      const auto at_y = mode_values(table, System::psi, factors.size(), y);
      const double rem =
          weighted_dot(factors, at_zero, at_y) - kernel_zero_leading(table.order(), delta, radius, y);
      if (y * radius > 1.0) {
        far = std::max(far, std::abs(rem) * std::pow(y, nu + 0.5));
      } else {
        near = std::max(near, std::abs(rem));
      }
    }
    out.radii.push_back(radius);
    out.far.push_back(far);
    out.near.push_back(near);
  }
  if (out.radii.size() >= 2) {
    const std::size_t start = out.radii.size() >= 4 ? out.radii.size() / 2 : 0;
    out.far_fit = fit_loglog(std::span(out.radii).subspan(start), std::span(out.far).subspan(start));
  }
  return out;
}

}  // namespace fbr
