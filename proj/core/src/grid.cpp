#include "fbr/grid.hpp"

#include <cmath>

#include "fbr/errors.hpp"

namespace fbr {

namespace {
constexpr double kGeometricStart = 1e-5;
constexpr double kSplit = 1.0 / 64.0;
}  // namespace

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n == 0 || !(b > a)) throw DomainError("uniform_grid: need n >= 1 and a < b");
  std::vector<double> grid(n);
  const double h = (b - a) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = a + (static_cast<double>(i) + 0.5) * h;
  return grid;
}

std::vector<double> evaluation_grid(std::size_t points) {
  if (points < 16) throw DomainError("evaluation_grid: need at least 16 points");
  const std::size_t near = points / 8;
  std::vector<double> grid;
  grid.reserve(points);
  const double ratio = std::pow(kSplit / kGeometricStart, 1.0 / static_cast<double>(near));
  for (std::size_t i = 0; i < near; ++i) grid.push_back(kGeometricStart * std::pow(ratio, static_cast<double>(i)));
  for (const double x : uniform_grid(kSplit, 1.0, points - near)) grid.push_back(x);
  return grid;
}

}  // namespace fbr
