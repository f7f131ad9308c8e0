#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fbr/fit.hpp"
#include "fbr/specfun.hpp"
#include "fbr/zeros.hpp"

namespace fbr {

/// The five pieces of (0,1)^2 used by the pointwise kernel bound.
enum class Region { A1, A2, A3, A4, A5 };
inline constexpr std::size_t kRegionCount = 5;

std::string_view region_name(Region region);

/// First match in the order
///   A1: x, y <= 4/R
///   A2: |x - y| <= 2/R
///   A3: x >= 4/R and y <= x/2
///   A4: y >= 4/R and x <= y/2
///   A5: everything else.
Region classify_region(double radius, double x, double y);

/// K_R^delta(x,y) = sum_{s_j <= R} (1 - s_j^2/R^2)^delta phi_j(x) phi_j(y).
double kernel(const ZeroTable& table, double delta, double radius, double x, double y);

/// The same sum with psi_j; x = 0 is allowed.
double kernel_mu(const ZeroTable& table, double delta, double radius, double x, double y);

/// Right-hand side of the pointwise bound with constant 1:
///   A1: (xy)^{nu+1/2} R^{2(nu+1)}
///   A2: R
///   A3..A5: Phi(Rx) Phi(Ry) / (R^delta |x - y|^{delta+1}).
double kernel_bound(Order order, double delta, double radius, double x, double y);

struct KernelSample {
  double x;
  double y;
  double radius;
  double value;
  double bound;
  Region region;
};

struct RegionStat {
  std::size_t samples = 0;
  double max_ratio = 0.0;
  bool sampled() const noexcept { return samples > 0; }
};

struct BoundSweepRow {
  double radius;
  std::array<RegionStat, kRegionCount> regions;
};

struct BoundSweep {
  std::vector<BoundSweepRow> rows;
  /// Every (x, y, R) sample when requested.
  std::vector<KernelSample> samples;

  /// max/min over R of the region's empirical constant; nullopt when some R
  /// left the region unsampled.
  std::optional<double> variation(Region region) const;
};

/// Empirical constants max |K| / bound per region and radius over all
/// pairs (x, y) of grid points with x != y.
BoundSweep bound_ratio_sweep(const ZeroTable& table, double delta, std::span<const double> radii,
                             std::span<const double> grid, bool keep_samples = false);

/// Closed-form main part of K_R(0, y) in the psi picture:
///   2^{delta-nu} Gamma(delta+1)/Gamma(nu+1) R^{2(nu+1)} J_{nu+delta+1}(yR)/(yR)^{nu+delta+1}.
/// Requires nu > -1/2 and delta > 0.
double kernel_zero_leading(Order order, double delta, double radius, double y);

/// kernel_mu(0, y) - kernel_zero_leading(y).
double kernel_zero_remainder(const ZeroTable& table, double delta, double radius, double y);

/// Remainder size with constant 1: R^{2nu-delta+1} for yR <= 1, otherwise
/// R^{nu-delta+1/2} y^{-(nu+1/2)}.
double remainder_bound(Order order, double delta, double radius, double y);

struct RemainderScaling {
  std::vector<double> radii;
  /// max over yR > 1 of |remainder| y^{nu+1/2}
  std::vector<double> far;
  /// max over yR <= 1 of |remainder|; 0 when no grid point is that close to 0
  std::vector<double> near;
  /// log-log fit of far against R over the upper half of the radii (all of
  /// them when there are fewer than four)
  LineFit far_fit;
};

RemainderScaling remainder_scaling(const ZeroTable& table, double delta, std::span<const double> radii,
                                   std::span<const double> y_grid);

}  // namespace fbr
