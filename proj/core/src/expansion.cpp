#include "fbr/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fbr/errors.hpp"
#include "fbr/format.hpp"
#include "summation.hpp"

namespace fbr {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void check_mode(const ZeroTable& table, std::size_t j) {
  if (j == 0 || j > table.size()) {
    throw TableTooShort("mode index " + std::to_string(j) + " outside 1.." + std::to_string(table.size()));
  }
}

void check_coefficients_cover(const CoefficientVector& coeffs, std::size_t modes) {
  if (modes > coeffs.size()) {
    throw std::length_error("expansion: " + std::to_string(modes) + " modes needed but only " +
                            std::to_string(coeffs.size()) + " coefficients given");
  }
}

// a_j mode_j(x) for j = 1..count.
std::vector<double> weighted_terms(const CoefficientVector& coeffs, const ZeroTable& table, std::size_t count,
                                   double x) {
  auto terms = mode_values(table, coeffs.system(), count, x);
  const auto a = coeffs.values();
  for (std::size_t i = 0; i < count; ++i) terms[i] *= a[i];
  return terms;
}

double riesz_sum(std::span<const double> terms, std::span<const double> zeros, double radius, double delta) {
  NeumaierSum sum;
  for (std::size_t i = 0; i < terms.size() && zeros[i] <= radius; ++i) {
    sum.add(riesz_factor(zeros[i], radius, delta) * terms[i]);
  }
  return sum.value();
}

}  // namespace

GridFunction::GridFunction(std::vector<double> grid, std::vector<double> values, Measure measure)
    : grid_(std::move(grid)), values_(std::move(values)), measure_(measure) {
  if (grid_.empty() || grid_.size() != values_.size()) {
    throw DomainError("GridFunction: grid and values must be non-empty and of equal length");
  }
  if (!(grid_.front() > 0.0) || !(grid_.back() < 1.0)) {
    throw DomainError("GridFunction: grid must lie strictly inside (0,1)");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) throw DomainError("GridFunction: grid must be strictly increasing");
  }
  for (const double v : values_) {
    if (!std::isfinite(v)) throw DomainError("GridFunction: values must be finite");
  }
}

double GridFunction::interpolate(double x) const {
  if (x <= grid_.front()) return values_.front();
  if (x >= grid_.back()) return values_.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const auto hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

RadialFunction as_radial(const GridFunction& f) {
  RadialFunction radial;
  radial.breakpoints.assign(f.grid().begin(), f.grid().end());
  radial.eval = [f](double x) { return f.interpolate(x); };
  return radial;
}

CoefficientVector::CoefficientVector(Order order, System system, std::vector<double> coeffs)
    : order_(order), system_(system), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("CoefficientVector: need at least one coefficient");
  for (const double c : coeffs_) {
    if (!std::isfinite(c)) throw DomainError("CoefficientVector: coefficients must be finite");
  }
}

RieszPlan::RieszPlan(const ZeroTable& table, double delta, double radius)
    : delta_(delta), radius_(radius), modes_(0) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("RieszPlan: delta must be > 0");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("RieszPlan: R must be > 0");
  modes_ = table.count_below(radius);
}

DelayedMeansPlan::DelayedMeansPlan(unsigned r, double radius)
    : r_(r), radius_(radius), alphas_(solve_delayed_coeffs(r)) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("DelayedMeansPlan: R must be > 0");
}

double eval_psi(const ZeroTable& table, std::size_t j, double x) {
  check_mode(table, j);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eval_psi: x must lie in [0,1]");
  const Order order = table.order();
  const double s = table.zero(j);
  return kSqrt2 / table.normalizer(j) * std::pow(s, order.nu()) * bessel_j_scaled(order, s * x);
}

double eval_phi(const ZeroTable& table, std::size_t j, double x) {
  check_mode(table, j);
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("eval_phi: x must lie in (0,1]");
  return std::sqrt(2.0 * x) * bessel_j(table.order(), table.zero(j) * x) / table.normalizer(j);
}

double eval_mode(const ZeroTable& table, System system, std::size_t j, double x) {
  return system == System::psi ? eval_psi(table, j, x) : eval_phi(table, j, x);
}

std::vector<double> mode_values(const ZeroTable& table, System system, std::size_t count, double x) {
  if (count > table.size()) {
    throw TableTooShort("mode_values: " + std::to_string(count) + " modes requested, table has " +
                        std::to_string(table.size()));
  }
  std::vector<double> values(count);
  for (std::size_t j = 1; j <= count; ++j) values[j - 1] = eval_mode(table, system, j, x);
  return values;
}

double riesz_factor(double s, double radius, double delta) {
  if (s > radius) return 0.0;
  const double ratio = s / radius;
  return std::pow(1.0 - ratio * ratio, delta);
}

CoefficientVector coefficients(const RadialFunction& f, const ZeroTable& table, std::size_t count,
                               System system, const QuadSpec& quad) {
  if (count == 0) throw DomainError("coefficients: need at least one mode");
  if (count > table.size()) throw TableTooShort("coefficients: N exceeds the zero table");
  const Order order = table.order();
  const double weight_exponent = system == System::psi ? order.measure_exponent() : 0.0;
  const double bandwidth = std::max(table.zero(count), f.bandwidth);

  const QuadratureRule base(panel_edges(quad, bandwidth, f.breakpoints));
  const QuadratureRule fine = base.refined();

  const auto project = [&](const QuadratureRule& rule) {
    std::vector<NeumaierSum> sums(count);
    const auto nodes = rule.nodes();
    const auto weights = rule.weights();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double x = nodes[i];
      const double fw = f(x) * weights[i] * (weight_exponent == 0.0 ? 1.0 : std::pow(x, weight_exponent));
      if (fw == 0.0) continue;
      for (std::size_t j = 1; j <= count; ++j) sums[j - 1].add(fw * eval_mode(table, system, j, x));
    }
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = sums[j].value();
    return out;
  };

  const auto coarse = project(base);
  auto refined = project(fine);
  for (std::size_t j = 0; j < count; ++j) {
    const double change = std::abs(refined[j] - coarse[j]);
    if (!(change <= quad.tolerance * std::max(1.0, std::abs(refined[j])))) {
      throw NonConvergence("coefficients: panel doubling changed a_" + std::to_string(j + 1) + " by " +
                               to_shortest(change),
                           change);
    }
  }
  return CoefficientVector(order, system, std::move(refined));
}

CoefficientVector coefficients(const GridFunction& f, const ZeroTable& table, std::size_t count,
                               System system, const QuadSpec& quad) {
  return coefficients(as_radial(f), table, count, system, quad);
}

double series_value(const CoefficientVector& coeffs, const ZeroTable& table, double x) {
  const auto terms = weighted_terms(coeffs, table, coeffs.size(), x);
  NeumaierSum sum;
  for (const double t : terms) sum.add(t);
  return sum.value();
}

RadialFunction series_function(const CoefficientVector& coeffs, const ZeroTable& table) {
  RadialFunction f;
  f.bandwidth = table.zero(coeffs.size());
  f.eval = [coeffs, table](double x) { return series_value(coeffs, table, x); };
  return f;
}

double partial_sum(const CoefficientVector& coeffs, const ZeroTable& table, double radius, double x) {
  const std::size_t modes = table.count_below(radius);
  check_coefficients_cover(coeffs, modes);
  const auto terms = weighted_terms(coeffs, table, modes, x);
  NeumaierSum sum;
  for (const double t : terms) sum.add(t);
  return sum.value();
}

double bochner_riesz(const CoefficientVector& coeffs, const ZeroTable& table, const RieszPlan& plan,
                     double x) {
  check_coefficients_cover(coeffs, plan.modes());
  if (plan.modes() > table.size()) throw TableTooShort("bochner_riesz: plan exceeds the zero table");
  const auto terms = weighted_terms(coeffs, table, plan.modes(), x);
  return riesz_sum(terms, table.zeros(), plan.radius(), plan.delta());
}

double maximal_riesz(const CoefficientVector& coeffs, const ZeroTable& table, double delta,
                     std::span<const double> radius_grid, double x) {
  if (radius_grid.empty()) throw std::invalid_argument("maximal_riesz: empty radius grid");
  const double top = *std::max_element(radius_grid.begin(), radius_grid.end());
  const std::size_t modes = table.count_below(top);
  check_coefficients_cover(coeffs, modes);
  const auto terms = weighted_terms(coeffs, table, modes, x);
  double best = 0.0;
  for (const double radius : radius_grid) {
    best = std::max(best, std::abs(riesz_sum(terms, table.zeros(), radius, delta)));
  }
  return best;
}

std::vector<double> geometric_radius_grid(double r_min, double r_max, double ratio) {
  if (!(r_min > 0.0) || !(r_max >= r_min) || !(ratio > 1.0)) {
    throw DomainError("geometric_radius_grid: need 0 < r_min <= r_max and ratio > 1");
  }
  std::vector<double> grid;
  for (double r = r_min; r < r_max; r *= ratio) grid.push_back(r);
  grid.push_back(r_max);
  return grid;
}

std::vector<double> solve_delayed_coeffs(unsigned r) {
  if (r > 12) throw ConditioningError("solve_delayed_coeffs: r > 12 is too ill-conditioned");
  const std::size_t n = r + 1;
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      a[j][l] = std::pow(static_cast<double>(l + 1), -2.0 * static_cast<double>(j));
    }
    a[j][n] = j == 0 ? 1.0 : 0.0;
  }
  const auto original = a;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (a[pivot][col] == 0.0) throw ConditioningError("solve_delayed_coeffs: singular system");
    std::swap(a[col], a[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k <= n; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  std::vector<double> alpha(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = a[i][n];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * alpha[k];
    alpha[i] = acc / a[i][i];
  }

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    NeumaierSum row;
    for (std::size_t l = 0; l < n; ++l) row.add(original[j][l] * alpha[l]);
    residual = std::max(residual, std::abs(row.value() - original[j][n]));
  }
  if (residual > 1e-10) {
    throw ConditioningError("solve_delayed_coeffs: residual " + to_shortest(residual) + " above 1e-10");
  }
  return alpha;
}

double delayed_means(const CoefficientVector& coeffs, const ZeroTable& table, const DelayedMeansPlan& plan,
                     double x) {
  const double top = (plan.r() + 1.0) * plan.radius();
  const std::size_t modes = table.count_below(top);
  check_coefficients_cover(coeffs, modes);
  const auto terms = weighted_terms(coeffs, table, modes, x);
  const auto alphas = plan.alphas();
  NeumaierSum sum;
  for (std::size_t l = 0; l < alphas.size(); ++l) {
    const double radius = static_cast<double>(l + 1) * plan.radius();
    sum.add(alphas[l] * riesz_sum(terms, table.zeros(), radius, static_cast<double>(plan.r())));
  }
  return sum.value();
}

std::vector<std::optional<double>> hardy_riesz_ratio(const CoefficientVector& coeffs, const ZeroTable& table,
                                                     double delta, double x, double limit,
                                                     std::size_t n_max) {
  if (n_max + 1 > table.size()) throw TableTooShort("hardy_riesz_ratio: table must hold s_{n_max+1}");
  check_coefficients_cover(coeffs, n_max);
  const auto terms = weighted_terms(coeffs, table, n_max, x);
  const auto zeros = table.zeros();

  std::vector<std::optional<double>> ratios;
  ratios.reserve(n_max);
  NeumaierSum partial;
  for (std::size_t n = 1; n <= n_max; ++n) {
    partial.add(terms[n - 1]);
    const double numerator = std::abs(partial.value() - limit);
    const auto grid = geometric_radius_grid(0.5 * zeros[0], zeros[n]);
    double sup = 0.0;
    for (const double t : grid) {
      sup = std::max(sup, std::abs(riesz_sum(std::span(terms).first(n), zeros, t, delta)));
    }
    const double denominator = std::pow(static_cast<double>(n), delta) * sup;
    if (!(denominator > 1e-300)) {
      ratios.emplace_back(std::nullopt);
    } else {
      ratios.emplace_back(numerator / denominator);
    }
  }
  return ratios;
}

}  // namespace fbr
