#include "fbr/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fbr/errors.hpp"
#include "fbr/grid.hpp"
#include "summation.hpp"

namespace fbr {

namespace {

constexpr int kBisectionSteps = 60;

double measure_weight(Order order, Measure measure, double x) {
  return measure == Measure::mu_nu ? std::pow(x, order.measure_exponent()) : 1.0;
}

// int_a^b x^e dx for e > -1, 0 <= a <= b
double power_integral(double a, double b, double e) {
  return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

double weighted_abs(const LpSpec& spec, double x, double v) {
  return std::abs(spec.weight_exponent() == 0.0 ? v : std::pow(x, spec.weight_exponent()) * v);
}

// psi_j(x_i) for every grid point, modes 1..count
std::vector<std::vector<double>> mode_matrix(const ZeroTable& table, std::size_t count,
                                             std::span<const double> grid) {
  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = mode_values(table, System::psi, count, grid[i]);
  return rows;
}

double dot(std::span<const double> a, std::span<const double> b) {
  NeumaierSum sum;
  for (std::size_t j = 0; j < a.size(); ++j) sum.add(a[j] * b[j]);
  return sum.value();
}

std::vector<double> series_on_grid(std::span<const double> coeffs, const std::vector<std::vector<double>>& modes) {
  std::vector<double> values(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) values[i] = dot(coeffs, modes[i]);
  return values;
}

std::vector<double> riesz_scaled(const CoefficientVector& coeffs, const ZeroTable& table, double radius,
                                 double delta) {
  std::vector<double> out(coeffs.values().begin(), coeffs.values().end());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= riesz_factor(table.zeros()[j], radius, delta);
  return out;
}

double log_normaliser(double radius, double p0) { return std::pow(std::log(radius), 1.0 / p0); }

double interval_measure(std::span<const std::pair<double, double>> intervals, Order order) {
  double total = 0.0;
  for (const auto& [a, b] : intervals) total += power_integral(a, b, order.measure_exponent());
  return total;
}

}  // namespace

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("conjugate_exponent: p must be >= 1");
  if (p == 1.0) return kInfinity;
  if (p == kInfinity) return 1.0;
  return p / (p - 1.0);
}

LpSpec::LpSpec(double p, Measure measure, double weight_exponent)
    : p_(p), measure_(measure), weight_exponent_(weight_exponent) {
  if (!(p >= 1.0)) throw DomainError("LpSpec: p must be >= 1");
  if (!std::isfinite(weight_exponent)) throw DomainError("LpSpec: weight exponent must be finite");
}

std::vector<double> sign_changes(const std::function<double(double)>& f, double bandwidth) {
  const auto cells = static_cast<std::size_t>(
      std::max(64.0, 16.0 * std::ceil(std::max(bandwidth, 0.0) / std::numbers::pi)));
  const auto points = uniform_grid(0.0, 1.0, cells);
  std::vector<double> roots;
  double prev_x = points.front();
  double prev_v = f(prev_x);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double x = points[i];
    const double v = f(x);
    if (std::isfinite(prev_v) && std::isfinite(v) && ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0))) {
      double lo = prev_x, hi = x, f_lo = prev_v;
      for (int it = 0; it < kBisectionSteps && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
  }
  return roots;
}

double lp_norm(const RadialFunction& f, Order order, const LpSpec& spec, const QuadSpec& quad,
               std::span<const double> grid) {
  if (spec.infinite()) {
    const auto fallback = grid.empty() ? evaluation_grid() : std::vector<double>{};
    const std::span<const double> points = grid.empty() ? std::span<const double>(fallback) : grid;
    double sup = 0.0;
    for (const double x : points) sup = std::max(sup, weighted_abs(spec, x, f(x)));
    return sup;
  }
  auto breakpoints = f.breakpoints;
  for (const double r : sign_changes(f.eval, f.bandwidth)) breakpoints.push_back(r);
  const double p = spec.p();
  const auto integrand = [&](double x) {
    const double v = weighted_abs(spec, x, f(x));
    if (v == 0.0) return 0.0;
    return std::pow(v, p) * measure_weight(order, spec.measure(), x);
  };
  const auto estimate = integrate_checked(integrand, quad, f.bandwidth, breakpoints);
  return std::pow(estimate.value, 1.0 / p);
}

double lp_norm(const GridFunction& f, Order order, const LpSpec& spec, const QuadSpec& quad) {
  if (spec.infinite()) {
    double sup = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sup = std::max(sup, weighted_abs(spec, f.grid()[i], f.values()[i]));
    return sup;
  }
  return lp_norm(as_radial(f), order, spec, quad);
}

std::vector<double> cell_measures(std::span<const double> grid, Order order, Measure measure) {
  std::vector<double> out(grid.size());
  const double e = measure == Measure::mu_nu ? order.measure_exponent() : 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lo = i == 0 ? 0.0 : 0.5 * (grid[i - 1] + grid[i]);
    const double hi = i + 1 == grid.size() ? 1.0 : 0.5 * (grid[i] + grid[i + 1]);
    out[i] = power_integral(lo, hi, e);
  }
  return out;
}

double weak_lp_quasinorm(std::span<const double> grid, std::span<const double> values, Order order,
                         const LpSpec& spec) {
  if (spec.infinite()) throw DomainError("weak_lp_quasinorm: p must be finite");
  if (grid.size() != values.size()) throw DomainError("weak_lp_quasinorm: grid and values differ in length");
  const auto cells = cell_measures(grid, order, spec.measure());
  std::vector<std::pair<double, double>> levels(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) levels[i] = {weighted_abs(spec, grid[i], values[i]), cells[i]};
  std::sort(levels.begin(), levels.end(), [](const auto& l, const auto& r) { return l.first > r.first; });

  double best = 0.0;
  double measure = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    measure += levels[i].second;
    const bool last_of_level = i + 1 == levels.size() || levels[i + 1].first < levels[i].first;
    if (last_of_level) best = std::max(best, levels[i].first * std::pow(measure, 1.0 / spec.p()));
  }
  return best;
}

double weak_lp_quasinorm(const RadialFunction& f, Order order, const LpSpec& spec,
                         std::span<const double> grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  return weak_lp_quasinorm(grid, values, order, spec);
}

double weak_lp_quasinorm(const GridFunction& f, Order order, const LpSpec& spec) {
  return weak_lp_quasinorm(f.grid(), f.values(), order, spec);
}

CriticalExponents critical_exponents(Order order, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("critical_exponents: delta must be > 0");
  const double nu = order.nu();
  if (nu <= -0.5 || delta >= nu + 0.5) return {1.0, kInfinity};
  return {4.0 * (nu + 1.0) / (2.0 * nu + 3.0 + 2.0 * delta), 4.0 * (nu + 1.0) / (2.0 * nu + 1.0 - 2.0 * delta)};
}

namespace {

struct Clause {
  bool holds;
  bool strict;
};

ConditionCheck assemble(const std::array<Clause, 5>& c, const char* suffix, double p) {
  ConditionCheck out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].holds) out.violations.push_back("con" + std::to_string(i + 1) + suffix);
  }
  const auto pair = [&](std::size_t i) {
    if (c[i].holds && c[4].holds && !c[i].strict && !c[4].strict) {
      out.violations.push_back("pair(con" + std::to_string(i + 1) + suffix + ",con5" + suffix + ")");
    }
  };
  pair(1);
  pair(2);
  if (p != kInfinity) pair(3);
  out.pass = out.violations.empty();
  return out;
}

void check_p(double p) {
  if (!(p >= 1.0)) throw DomainError("condition check: p must lie in [1, inf]");
}

}  // namespace

ConditionCheck cp_check(double a, double A, Order order, double delta, double p) {
  check_p(p);
  const double inv = 1.0 / p;
  const double h = order.nu() + 0.5;
  const bool inf = p == kInfinity;
  const double r1 = -inv - h, r2 = 1.0 - inv + h, r3 = -delta - inv, r4 = 1.0 + delta - inv;
  return assemble({Clause{inf ? a >= r1 : a > r1, a > r1},
                   Clause{p == 1.0 ? A <= r2 : A < r2, A < r2},
                   Clause{inf ? a >= r3 : a > r3, a > r3},
                   Clause{A <= r4, A < r4},
                   Clause{A <= a, A < a}},
                  "", p);
}

ConditionCheck Cp_check(double b, double B, Order order, double delta, double p) {
  check_p(p);
  const double inv = 1.0 / p;
  const double k = 2.0 * (order.nu() + 1.0);
  const bool inf = p == kInfinity;
  const double r1 = -k * inv, r2 = k * (1.0 - inv), r3 = k * (0.5 - inv) - delta - 0.5,
               r4 = k * (0.5 - inv) + delta + 0.5;
  return assemble({Clause{inf ? b >= r1 : b > r1, b > r1},
                   Clause{p == 1.0 ? B <= r2 : B < r2, B < r2},
                   Clause{inf ? b >= r3 : b > r3, b > r3},
                   Clause{B <= r4, B < r4},
                   Clause{B <= b, B < b}},
                  "B", p);
}

double critical_norm_exponent(Order order) {
  const double nu = order.nu();
  if (nu <= -0.5) return kInfinity;
  return 2.0 * (nu + 1.0) / (nu + 0.5);
}

NormCurve psi_norm_curve(const ZeroTable& table, double p, std::span<const std::size_t> modes,
                         const QuadSpec& quad) {
  const LpSpec spec(p);
  const Order order = table.order();
  NormCurve curve;
  const auto grid = evaluation_grid();
  for (const std::size_t j : modes) {
    RadialFunction psi;
    psi.eval = [&table, j](double x) { return eval_psi(table, j, x); };
    psi.bandwidth = table.zero(j);
    double norm = lp_norm(psi, order, spec, quad, grid);
    if (spec.infinite()) norm = std::max(norm, std::abs(eval_psi(table, j, 0.0)));
    curve.modes.push_back(j);
    curve.norms.push_back(norm);
  }

  const double critical = critical_norm_exponent(order);
  const double nu = order.nu();
  if (critical != kInfinity && std::abs(p - critical) <= 1e-12 * critical) {
    curve.regime = NormRegime::critical;
  } else if (p > critical) {
    curve.regime = NormRegime::above;
    curve.expected_slope = (nu + 0.5) - (spec.infinite() ? 0.0 : 2.0 * (nu + 1.0) / p);
  }

  if (curve.modes.size() >= 2) {
    const std::size_t start = curve.modes.size() >= 4 ? curve.modes.size() / 2 : 0;
    std::vector<double> js, ns;
    for (std::size_t i = start; i < curve.modes.size(); ++i) {
      js.push_back(static_cast<double>(curve.modes[i]));
      ns.push_back(curve.norms[i]);
    }
    curve.fit = fit_loglog(js, ns);
    if (curve.regime == NormRegime::critical) {
      std::vector<double> logs;
      std::vector<double> vals;
      for (std::size_t i = 0; i < js.size(); ++i) {
        if (js[i] >= 2.0) {
          logs.push_back(std::log(js[i]));
          vals.push_back(ns[i]);
        }
      }
      if (logs.size() >= 2) curve.log_fit = fit_loglog(logs, vals);
    }
  }
  return curve;
}

CoefficientVector kernel_at_zero(const ZeroTable& table, double delta, double radius) {
  const std::size_t modes = table.count_below(radius);
  if (modes == 0) throw DomainError("kernel_at_zero: R is below the first zero");
  std::vector<double> c(modes);
  for (std::size_t j = 1; j <= modes; ++j) {
    c[j - 1] = riesz_factor(table.zero(j), radius, delta) * eval_psi(table, j, 0.0);
  }
  return CoefficientVector(table.order(), System::psi, std::move(c));
}

std::string_view growth_kind_name(GrowthKind kind) {
  switch (kind) {
    case GrowthKind::noweak: return "noweak";
    case GrowthKind::nostrong: return "nostrong";
    case GrowthKind::weak: return "weak";
    case GrowthKind::restricted: return "restricted";
  }
  return "?";
}

std::optional<GrowthKind> parse_growth_kind(std::string_view name) {
  for (const auto kind : {GrowthKind::noweak, GrowthKind::nostrong, GrowthKind::weak, GrowthKind::restricted}) {
    if (growth_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void require_growth_hypothesis(Order order, double delta) {
  const double nu = order.nu();
  if (!(nu > -0.5) || !(delta > 0.0) || delta > nu + 0.5) {
    throw DomainError("growth probes need nu > -1/2 and 0 < delta <= nu + 1/2 (got nu = " + std::to_string(nu) +
                      ", delta = " + std::to_string(delta) + "); the lower bound is stated for 0 < delta < nu + 1/2 "
                      "with the log R variant at delta = nu + 1/2");
  }
}

double GrowthReport::spread() const {
  if (points.empty()) return 0.0;
  double lo = points.front().ratio, hi = lo;
  for (const auto& pt : points) {
    lo = std::min(lo, pt.ratio);
    hi = std::max(hi, pt.ratio);
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

QuadSpec probe_quad() {
  QuadSpec q;
  q.panels_per_wavelength = 6;
  q.tolerance = 1e-5;
  return q;
}

GrowthReport growth_probe_noweak(const ZeroTable& table, double delta, std::span<const double> radii,
                                 const QuadSpec& quad) {
  const Order order = table.order();
  require_growth_hypothesis(order, delta);
  const auto ce = critical_exponents(order, delta);
  GrowthReport report;
  report.kind = GrowthKind::noweak;
  report.p0 = ce.p0;
  report.p1 = ce.p1;
  const double nu = order.nu();
  for (const double radius : radii) {
    auto k = series_function(kernel_at_zero(table, delta, radius), table);
    k.bandwidth = std::max(k.bandwidth, radius);
    const double value = lp_norm(k, order, LpSpec(ce.p0), quad);
    const double normaliser = std::pow(radius, nu - delta + 0.5) * log_normaliser(radius, ce.p0);
    report.points.push_back({radius, value, normaliser, value / normaliser});
  }
  return report;
}

RadialFunction indicator(std::vector<std::pair<double, double>> intervals) {
  std::sort(intervals.begin(), intervals.end());
  RadialFunction f;
  for (const auto& [a, b] : intervals) {
    if (!(a >= 0.0 && b <= 1.0 && a < b)) throw DomainError("indicator: intervals must satisfy 0 <= a < b <= 1");
    f.breakpoints.push_back(a);
    f.breakpoints.push_back(b);
  }
  f.eval = [intervals](double x) {
    for (const auto& [a, b] : intervals) {
      if (x > a && x < b) return 1.0;
    }
    return 0.0;
  };
  return f;
}

namespace {

struct DualData {
  CoefficientVector b_g;  // coefficients of B_R g
  std::vector<double> values;  // B_R g on the grid
};

DualData dual_extremal(const ZeroTable& table, double delta, double radius, const CriticalExponents& ce,
                       const std::vector<std::vector<double>>& modes,
                       const QuadSpec& quad) {
  const Order order = table.order();
  auto k = series_function(kernel_at_zero(table, delta, radius), table);
  k.bandwidth = std::max(k.bandwidth, radius);
  RadialFunction g;
  g.bandwidth = k.bandwidth;
  g.breakpoints = sign_changes(k.eval, k.bandwidth);
  if (ce.p1 == kInfinity) {
    g.eval = [k](double y) {
      const double v = k(y);
      return static_cast<double>((v > 0.0) - (v < 0.0));
    };
  } else {
    const double norm = lp_norm(k, order, LpSpec(ce.p0), quad);
    const double scale = std::pow(norm, ce.p0 - 1.0);
    const double e = ce.p0 - 1.0;
    g.eval = [k, scale, e](double y) {
      const double v = k(y);
      return std::copysign(std::pow(std::abs(v), e), v) / scale;
    };
  }
  const std::size_t n = table.count_below(radius);
  const auto a = coefficients(g, table, n, System::psi, quad);
  auto scaled = riesz_scaled(a, table, radius, delta);
  DualData out{CoefficientVector(order, System::psi, scaled), {}};
  out.values = series_on_grid(scaled, modes);
  return out;
}

double riesz_norm_ratio(const RadialFunction& f, double f_norm, const ZeroTable& table, double delta,
                        double radius, double p0, const QuadSpec& quad) {
  const std::size_t n = table.count_below(radius);
  const auto a = coefficients(f, table, n, System::psi, quad);
  const CoefficientVector b(table.order(), System::psi, riesz_scaled(a, table, radius, delta));
  auto bf = series_function(b, table);
  bf.bandwidth = std::max(bf.bandwidth, radius);
  return lp_norm(bf, table.order(), LpSpec(p0), quad) / f_norm;
}

}  // namespace

GrowthReport growth_probe(GrowthKind kind, const ZeroTable& table, double delta, std::span<const double> radii,
                          std::span<const double> grid, const QuadSpec& quad) {
  if (kind == GrowthKind::noweak) return growth_probe_noweak(table, delta, radii, quad);
  const Order order = table.order();
  require_growth_hypothesis(order, delta);
  const auto ce = critical_exponents(order, delta);
  if (kind == GrowthKind::restricted && ce.p1 == kInfinity) {
    throw DomainError("growth --kind restricted needs delta < nu + 1/2; use nostrong at delta = nu + 1/2");
  }
  GrowthReport report;
  report.kind = kind;
  report.p0 = ce.p0;
  report.p1 = ce.p1;

  for (const double radius : radii) {
    double value = 0.0;
    if (kind == GrowthKind::nostrong) {
      const double e = 1.0 / radius;
      const std::pair<double, double> set{0.0, e};
      const double chi_norm = std::pow(interval_measure(std::span(&set, 1), order), 1.0 / ce.p0);
      value = riesz_norm_ratio(indicator({set}), chi_norm, table, delta, radius, ce.p0, quad);
    } else {
      const auto modes = mode_matrix(table, table.count_below(radius), grid);
      const auto dual = dual_extremal(table, delta, radius, ce, modes, quad);
      if (kind == GrowthKind::weak) {
        if (ce.p1 == kInfinity) {
          double sup = std::abs(series_value(dual.b_g, table, 0.0));
          for (const double v : dual.values) sup = std::max(sup, std::abs(v));
          value = sup;
        } else {
          value = weak_lp_quasinorm(grid, dual.values, order, LpSpec(ce.p1));
        }
      } else {
        // level set of |B_R g| at the maximising lambda of the weak norm
        const auto cells = cell_measures(grid, order, Measure::mu_nu);
        std::vector<std::size_t> idx(grid.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t l, std::size_t r) { return std::abs(dual.values[l]) > std::abs(dual.values[r]); });
        double measure = 0.0, best = -1.0, lambda = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          measure += cells[idx[i]];
          const double level = std::abs(dual.values[idx[i]]);
          const double q = level * std::pow(measure, 1.0 / ce.p1);
          if (q > best) {
            best = q;
            lambda = level;
          }
        }
        double plus = 0.0, minus = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          if (dual.values[i] >= lambda) plus += cells[i];
          if (dual.values[i] <= -lambda) minus += cells[i];
        }
        const double sign = plus >= minus ? 1.0 : -1.0;
        std::vector<std::pair<double, double>> set;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          if (sign * dual.values[i] < lambda) continue;
          const double lo = i == 0 ? 0.0 : 0.5 * (grid[i - 1] + grid[i]);
          const double hi = i + 1 == grid.size() ? 1.0 : 0.5 * (grid[i] + grid[i + 1]);
          if (!set.empty() && set.back().second == lo) {
            set.back().second = hi;
          } else {
            set.emplace_back(lo, hi);
          }
        }
        const double chi_norm = std::pow(interval_measure(set, order), 1.0 / ce.p0);
        value = riesz_norm_ratio(indicator(set), chi_norm, table, delta, radius, ce.p0, quad);
      }
    }
    const double normaliser = log_normaliser(radius, ce.p0);
    report.points.push_back({radius, value, normaliser, value / normaliser});
  }
  return report;
}

namespace {

std::vector<double> maximal_on_grid(std::span<const double> coeffs, const ZeroTable& table, double delta,
                                    std::span<const double> radius_grid,
                                    const std::vector<std::vector<double>>& modes) {
  std::vector<double> out(modes.size());
  const auto zeros = table.zeros();
  std::vector<double> terms(coeffs.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = 0; j < coeffs.size(); ++j) terms[j] = coeffs[j] * modes[i][j];
    double best = 0.0;
    for (const double radius : radius_grid) {
      NeumaierSum sum;
      for (std::size_t j = 0; j < terms.size() && zeros[j] <= radius; ++j) {
        sum.add(riesz_factor(zeros[j], radius, delta) * terms[j]);
      }
      best = std::max(best, std::abs(sum.value()));
    }
    out[i] = best;
  }
  return out;
}

}  // namespace

WeakTypeReport weak_type_probe(std::span<const RadialFunction> family, const ZeroTable& table, double delta,
                               double p, std::span<const double> radius_grid, std::span<const double> grid,
                               const QuadSpec& quad) {
  if (radius_grid.empty()) throw std::invalid_argument("weak_type_probe: empty radius grid");
  const Order order = table.order();
  const double top = *std::max_element(radius_grid.begin(), radius_grid.end());
  const std::size_t n = table.count_below(top);
  const auto modes = mode_matrix(table, n, grid);
  WeakTypeReport report;
  for (const auto& f : family) {
    const auto a = coefficients(f, table, n, System::psi, quad);
    const auto maximal = maximal_on_grid(a.values(), table, delta, radius_grid, modes);
    const double ratio = weak_lp_quasinorm(grid, maximal, order, LpSpec(p)) / lp_norm(f, order, LpSpec(p), quad);
    report.ratios.push_back(ratio);
    report.sup = std::max(report.sup, ratio);
  }
  return report;
}

double maximal_strong_ratio(const CoefficientVector& coeffs, const ZeroTable& table, double delta, double p,
                            std::span<const double> radius_grid, std::span<const double> grid) {
  if (radius_grid.empty()) throw std::invalid_argument("maximal_strong_ratio: empty radius grid");
  const auto modes = mode_matrix(table, coeffs.size(), grid);
  const auto maximal = maximal_on_grid(coeffs.values(), table, delta, radius_grid, modes);
  const auto values = series_on_grid(coeffs.values(), modes);
  const std::vector<double> points(grid.begin(), grid.end());
  QuadSpec quad;
  quad.tolerance = 1e-6;
  const LpSpec spec(p);
  const double top = lp_norm(GridFunction(points, maximal), table.order(), spec, quad);
  const double bottom = lp_norm(GridFunction(points, values), table.order(), spec, quad);
  return top / bottom;
}

NikolskiiRatios nikolskii_ratios(const CoefficientVector& coeffs, const ZeroTable& table, double radius,
                                 std::span<const double> ps, std::span<const double> grid, const QuadSpec& quad) {
  const Order order = table.order();
  const auto modes = mode_matrix(table, coeffs.size(), grid);
  const auto values = series_on_grid(coeffs.values(), modes);
  NikolskiiRatios out;
  out.sup_norm = std::abs(series_value(coeffs, table, 0.0));
  for (const double v : values) out.sup_norm = std::max(out.sup_norm, std::abs(v));
  const double scale = 2.0 * (order.nu() + 1.0);
  const double l1 = lp_norm(series_function(coeffs, table), order, LpSpec(1.0), quad);
  out.l1_ratio = out.sup_norm / (std::pow(radius, scale) * l1);
  for (const double p : ps) {
    const double weak = weak_lp_quasinorm(grid, values, order, LpSpec(p));
    out.weak_ratios.push_back(out.sup_norm / (std::pow(radius, scale / p) * weak));
  }
  return out;
}

SetInequality muckenhoupt_sides(std::span<const std::pair<double, double>> intervals, double a, double p) {
  if (!(p > 1.0) || p == kInfinity) throw DomainError("muckenhoupt_sides: needs 1 < p < inf");
  if (!(a > -1.0)) throw DomainError("muckenhoupt_sides: needs a > -1");
  double lhs = 0.0, rhs = 0.0;
  const double e = (a + 1.0) * p - 1.0;
  for (const auto& [lo, hi] : intervals) {
    if (!(lo >= 0.0 && hi >= lo)) throw DomainError("muckenhoupt_sides: intervals must satisfy 0 <= lo <= hi");
    lhs += power_integral(lo, hi, a);
    rhs += power_integral(lo, hi, e);
  }
  return {std::pow(lhs, p), std::pow(2.0, p) * std::pow(a + 1.0, 1.0 - p) * rhs};
}

double interpolation_constant(double a_bound, double b_bound, double p) {
  const double q = conjugate_exponent(p);
  return std::pow(a_bound, 1.0 / p) * (q == kInfinity ? 1.0 : std::pow(b_bound, 1.0 / q));
}

}  // namespace fbr
