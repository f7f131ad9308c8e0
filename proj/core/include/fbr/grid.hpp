#pragma once

#include <cstddef>
#include <vector>

namespace fbr {

/// Interior evaluation grid on (0,1): an eighth of the points geometric on
/// [1e-5, 1/64), the rest at cell centres of a uniform partition of
/// [1/64, 1). Strictly increasing, excludes 0 and 1.
std::vector<double> evaluation_grid(std::size_t points = 2048);

/// n cell centres of a uniform partition of [a, b].
std::vector<double> uniform_grid(double a, double b, std::size_t n);

}  // namespace fbr
