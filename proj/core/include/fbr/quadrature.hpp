#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fbr {

/// Composite Gauss-Legendre settings on (0,1).
///
/// The uniform panel count is max(min_panels, ceil(bandwidth/pi) *
/// panels_per_wavelength); caller breakpoints are added as extra panel
/// edges, and the first panel is split geometrically toward 0 so that
/// integrable x^a endpoint behaviour (a > -1) is resolved.
struct QuadSpec {
  int panels_per_wavelength = 4;
  int min_panels = 8;
  int grading_levels = 40;
  /// Largest accepted change under panel doubling, relative to max(1, |I|).
  double tolerance = 1e-7;
};

/// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
  static constexpr std::size_t kPoints = 16;
  std::span<const double> nodes() const noexcept;
  std::span<const double> weights() const noexcept;
};

/// Nodes and weights of a composite rule on (0,1).
class QuadratureRule {
 public:
  /// Panel edges sorted ascending, starting at 0 and ending at 1.
  explicit QuadratureRule(std::span<const double> edges);

  /// Every panel bisected.
  QuadratureRule refined() const;

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  double integrate(const std::function<double(double)>& f) const;

 private:
  std::vector<double> edges_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Panel edges for `spec` with the given oscillation bandwidth and extra
/// breakpoints in (0,1).
std::vector<double> panel_edges(const QuadSpec& spec, double bandwidth,
                                std::span<const double> breakpoints = {});

struct QuadratureEstimate {
  double value;
  /// |I(2P) - I(P)|
  double change;
};

/// Integrates f over (0,1) on the base rule and on its refinement; returns
/// the refined value. Throws NonConvergence when the change exceeds
/// spec.tolerance * max(1, |I|).
QuadratureEstimate integrate_checked(const std::function<double(double)>& f, const QuadSpec& spec,
                                     double bandwidth, std::span<const double> breakpoints = {});

}  // namespace fbr
