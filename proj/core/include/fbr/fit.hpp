#pragma once

#include <span>

namespace fbr {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

/// Least squares on (log x, log y); every entry must be positive.
LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

}  // namespace fbr
