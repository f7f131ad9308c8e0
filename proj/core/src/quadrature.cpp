#include "fbr/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fbr/errors.hpp"
#include "fbr/format.hpp"
#include "summation.hpp"

namespace fbr {

namespace {

struct LegendreTable {
  std::array<double, GaussLegendre16::kPoints> nodes{};
  std::array<double, GaussLegendre16::kPoints> weights{};
};

// Newton iteration on P_n from the Chebyshev-like initial guesses.
LegendreTable build_legendre_table() {
  constexpr int n = static_cast<int>(GaussLegendre16::kPoints);
  LegendreTable table;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      derivative = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / derivative;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    table.nodes[static_cast<std::size_t>(i)] = -z;
    table.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    table.weights[static_cast<std::size_t>(i)] = w;
    table.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return table;
}

const LegendreTable& legendre() {
  static const LegendreTable table = build_legendre_table();
  return table;
}

}  // namespace

std::span<const double> GaussLegendre16::nodes() const noexcept { return legendre().nodes; }
std::span<const double> GaussLegendre16::weights() const noexcept { return legendre().weights; }

QuadratureRule::QuadratureRule(std::span<const double> edges) : edges_(edges.begin(), edges.end()) {
  if (edges_.size() < 2) throw DomainError("QuadratureRule: need at least two edges");
  const auto& gl = legendre();
  nodes_.reserve((edges_.size() - 1) * GaussLegendre16::kPoints);
  weights_.reserve(nodes_.capacity());
  for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
    const double a = edges_[p];
    const double b = edges_[p + 1];
    if (!(b > a)) throw DomainError("QuadratureRule: edges must be strictly increasing");
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < GaussLegendre16::kPoints; ++k) {
      nodes_.push_back(mid + half * gl.nodes[k]);
      weights_.push_back(half * gl.weights[k]);
    }
  }
}

QuadratureRule QuadratureRule::refined() const {
  std::vector<double> finer;
  finer.reserve(2 * edges_.size());
  for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
    finer.push_back(edges_[p]);
    finer.push_back(0.5 * (edges_[p] + edges_[p + 1]));
  }
  finer.push_back(edges_.back());
  return QuadratureRule(finer);
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  NeumaierSum sum;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum.add(weights_[i] * f(nodes_[i]));
  return sum.value();
}

std::vector<double> panel_edges(const QuadSpec& spec, double bandwidth,
                                std::span<const double> breakpoints) {
  const double wavelengths = std::ceil(std::max(bandwidth, 0.0) / std::numbers::pi);
  const int panels = std::max(spec.min_panels,
                              static_cast<int>(wavelengths) * std::max(spec.panels_per_wavelength, 1));
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(panels) + breakpoints.size() + 1);
  for (int p = 0; p <= panels; ++p) edges.push_back(static_cast<double>(p) / panels);
  for (const double b : breakpoints) {
    if (b > 0.0 && b < 1.0) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return b - a <= 1e-15; }),
              edges.end());
  edges.back() = 1.0;

  // geometric grading of the first panel toward 0
  const double first = edges[1];
  std::vector<double> graded;
  graded.reserve(static_cast<std::size_t>(std::max(spec.grading_levels, 0)) + edges.size());
  graded.push_back(0.0);
  for (int level = spec.grading_levels; level >= 1; --level) {
    graded.push_back(std::ldexp(first, -level));
  }
  graded.insert(graded.end(), edges.begin() + 1, edges.end());
  return graded;
}

QuadratureEstimate integrate_checked(const std::function<double(double)>& f, const QuadSpec& spec,
                                     double bandwidth, std::span<const double> breakpoints) {
  const QuadratureRule base(panel_edges(spec, bandwidth, breakpoints));
  const double coarse = base.integrate(f);
  const double fine = base.refined().integrate(f);
  const double change = std::abs(fine - coarse);
  if (!(change <= spec.tolerance * std::max(1.0, std::abs(fine)))) {
    throw NonConvergence("quadrature: panel doubling changed the integral by " + to_shortest(change),
                         change);
  }
  return {fine, change};
}

}  // namespace fbr
