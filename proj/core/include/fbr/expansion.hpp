#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fbr/quadrature.hpp"
#include "fbr/specfun.hpp"
#include "fbr/zeros.hpp"

namespace fbr {

/// d(mu_nu) = x^{2nu+1} dx or Lebesgue dx on (0,1).
enum class Measure { mu_nu, lebesgue };

/// psi_j = sqrt(2)/|J_{nu+1}(s_j)| x^{-nu} J_nu(s_j x), orthonormal in
/// L^2(d mu_nu); phi_j = x^{nu+1/2} psi_j, orthonormal in L^2(dx).
enum class System { psi, phi };

/// Samples of a function on a strictly increasing grid inside (0,1).
class GridFunction {
 public:
  GridFunction(std::vector<double> grid, std::vector<double> values, Measure measure = Measure::mu_nu);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  Measure measure() const noexcept { return measure_; }
  std::size_t size() const noexcept { return grid_.size(); }

  /// Piecewise-linear interpolant, constant beyond the first and last node.
  double interpolate(double x) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  Measure measure_;
};

/// A function on (0,1) with the information quadrature needs: interior
/// points where it is not smooth, and its highest oscillation frequency.
struct RadialFunction {
  std::function<double(double)> eval;
  std::vector<double> breakpoints;
  double bandwidth = 0.0;

  double operator()(double x) const { return eval(x); }
};

RadialFunction as_radial(const GridFunction& f);

/// Expansion coefficients a_j (System::psi) or b_j (System::phi), j = 1..N.
class CoefficientVector {
 public:
  CoefficientVector(Order order, System system, std::vector<double> coeffs);

  Order order() const noexcept { return order_; }
  System system() const noexcept { return system_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const double> values() const noexcept { return coeffs_; }
  /// Coefficient of mode j, 1-based.
  double operator()(std::size_t j) const { return coeffs_.at(j - 1); }

 private:
  Order order_;
  System system_;
  std::vector<double> coeffs_;
};

/// Smoothing exponent delta > 0, radius R > 0 and N = N(R) from a table.
class RieszPlan {
 public:
  RieszPlan(const ZeroTable& table, double delta, double radius);

  double delta() const noexcept { return delta_; }
  double radius() const noexcept { return radius_; }
  std::size_t modes() const noexcept { return modes_; }

 private:
  double delta_;
  double radius_;
  std::size_t modes_;
};

/// Delayed means sum_l alpha_l B^r_{lR}, alpha from solve_delayed_coeffs(r).
class DelayedMeansPlan {
 public:
  DelayedMeansPlan(unsigned r, double radius);

  unsigned r() const noexcept { return r_; }
  double radius() const noexcept { return radius_; }
  std::span<const double> alphas() const noexcept { return alphas_; }

 private:
  unsigned r_;
  double radius_;
  std::vector<double> alphas_;
};

/// psi_j(x) for mode j in 1..table.size() and 0 <= x < 1; the x = 0 value
/// is the limit sqrt(2)/|J_{nu+1}(s_j)| s_j^nu / (2^nu Gamma(nu+1)).
double eval_psi(const ZeroTable& table, std::size_t j, double x);

/// phi_j(x) = sqrt(2x) J_nu(s_j x) / |J_{nu+1}(s_j)| for 0 < x < 1.
double eval_phi(const ZeroTable& table, std::size_t j, double x);

double eval_mode(const ZeroTable& table, System system, std::size_t j, double x);

/// Modes 1..count at one point.
std::vector<double> mode_values(const ZeroTable& table, System system, std::size_t count, double x);

/// Multiplier (1 - s^2/R^2)_+^delta. For delta = 0 the s = R term keeps 1.
double riesz_factor(double s, double radius, double delta);

/// a_j = int f psi_j d mu_nu or b_j = int f phi_j dx for j = 1..count.
///
/// Composite Gauss-Legendre with at least ceil(s_N/pi) * 4 panels (more
/// when f itself oscillates faster) plus f's breakpoints; the result is the
/// refined estimate and NonConvergence is thrown when doubling changes any
/// coefficient by more than quad.tolerance.
CoefficientVector coefficients(const RadialFunction& f, const ZeroTable& table, std::size_t count,
                               System system, const QuadSpec& quad = {});
CoefficientVector coefficients(const GridFunction& f, const ZeroTable& table, std::size_t count,
                               System system, const QuadSpec& quad = {});

/// Sum_j a_j mode_j(x) over every stored coefficient.
double series_value(const CoefficientVector& coeffs, const ZeroTable& table, double x);

/// The band-limited function sum_j a_j mode_j as a RadialFunction.
RadialFunction series_function(const CoefficientVector& coeffs, const ZeroTable& table);

/// S_R f(x) = sum_{s_j <= R} a_j mode_j(x), ascending j, compensated.
double partial_sum(const CoefficientVector& coeffs, const ZeroTable& table, double radius, double x);

/// B_R^delta f(x) = sum_{s_j <= R} (1 - s_j^2/R^2)^delta a_j mode_j(x).
double bochner_riesz(const CoefficientVector& coeffs, const ZeroTable& table, const RieszPlan& plan,
                     double x);

/// max over radius_grid of |B_R^delta f(x)|. The grid is a discretisation
/// of sup_{R>0}: a lower bound that can only grow when the grid is refined.
double maximal_riesz(const CoefficientVector& coeffs, const ZeroTable& table, double delta,
                     std::span<const double> radius_grid, double x);

/// R_k = r_min * ratio^k for R_k < r_max, with r_max appended.
std::vector<double> geometric_radius_grid(double r_min, double r_max, double ratio = 1.05);

/// Solves sum_{l=1}^{r+1} alpha_l / l^{2j} = [j == 0], j = 0..r, by Gaussian
/// elimination with partial pivoting. Throws ConditioningError for r > 12
/// or when the residual exceeds 1e-10.
std::vector<double> solve_delayed_coeffs(unsigned r);

/// T_{r,R,alpha} f(x) = sum_l alpha_l B^r_{lR} f(x). The table must reach
/// (r+1)R.
double delayed_means(const CoefficientVector& coeffs, const ZeroTable& table, const DelayedMeansPlan& plan,
                     double x);

/// For n = 1..n_max:
///   |S_{s_n} f(x) - limit| / (n^delta sup_{t <= s_{n+1}} |B_t^delta f(x)|)
/// with the sup over a 1.05-geometric grid from s_1/2 up to s_{n+1}. A
/// vanishing denominator yields std::nullopt for that n.
std::vector<std::optional<double>> hardy_riesz_ratio(const CoefficientVector& coeffs, const ZeroTable& table,
                                                     double delta, double x, double limit,
                                                     std::size_t n_max);

}  // namespace fbr
