#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbr/expansion.hpp"
#include "fbr/fit.hpp"
#include "fbr/quadrature.hpp"
#include "fbr/specfun.hpp"
#include "fbr/zeros.hpp"

namespace fbr {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// 1/p + 1/p' = 1, with 1' = inf and inf' = 1.
double conjugate_exponent(double p);

/// Norm (int |x^w f|^p d mu)^{1/p}; p = kInfinity for the sup.
class LpSpec {
 public:
  explicit LpSpec(double p, Measure measure = Measure::mu_nu, double weight_exponent = 0.0);

  double p() const noexcept { return p_; }
  Measure measure() const noexcept { return measure_; }
  double weight_exponent() const noexcept { return weight_exponent_; }
  bool infinite() const noexcept { return p_ == kInfinity; }
  double conjugate() const { return conjugate_exponent(p_); }

 private:
  double p_;
  Measure measure_;
  double weight_exponent_;
};

/// Roots of f in (0,1) located by a sign-change scan (at least 64 cells,
/// 16 per half wavelength of `bandwidth`) and bisection.
std::vector<double> sign_changes(const std::function<double(double)>& f, double bandwidth);

/// Quadrature norm for finite p, with the sign changes of f added as panel
/// breakpoints so |f|^p is smooth inside each panel. For p = inf: the sup
/// of |x^w f| over `grid` (evaluation_grid() when empty).
double lp_norm(const RadialFunction& f, Order order, const LpSpec& spec, const QuadSpec& quad = {},
               std::span<const double> grid = {});
/// Norm of the piecewise-linear interpolant (grid sup for p = inf).
double lp_norm(const GridFunction& f, Order order, const LpSpec& spec, const QuadSpec& quad = {});

/// Measure of each grid cell; cells run between consecutive midpoints, the
/// first from 0 and the last to 1. Exact integrals of x^{2nu+1} (or 1).
std::vector<double> cell_measures(std::span<const double> grid, Order order, Measure measure);

/// sup_lambda lambda mu{|x^w f| > lambda}^{1/p} for the step function that
/// is constant on each grid cell. The sup is attained at a sample value, so
/// it is computed exactly by sorting. Zero data give 0.
double weak_lp_quasinorm(std::span<const double> grid, std::span<const double> values, Order order,
                         const LpSpec& spec);
double weak_lp_quasinorm(const RadialFunction& f, Order order, const LpSpec& spec,
                         std::span<const double> grid);
double weak_lp_quasinorm(const GridFunction& f, Order order, const LpSpec& spec);

struct CriticalExponents {
  double p0;
  double p1;
};

/// (1, inf) when delta >= nu + 1/2 or nu <= -1/2; otherwise
/// p0 = 4(nu+1)/(2nu+3+2delta), p1 = 4(nu+1)/(2nu+1-2delta).
CriticalExponents critical_exponents(Order order, double delta);

struct ConditionCheck {
  bool pass = true;
  std::vector<std::string> violations;
};

/// The five c_p inequalities on (a, A) for x^a B f in L^p(dx) with weight
/// x^A on f, plus the rule that each of the pairs (2,5), (3,5), (4,5) has
/// a strict member; the (4,5) pair is waived at p = inf.
ConditionCheck cp_check(double a, double A, Order order, double delta, double p);

/// The C_p inequalities on (b, B) for the d mu_nu picture, same pair rule.
ConditionCheck Cp_check(double b, double B, Order order, double delta, double p);

enum class NormRegime { below, critical, above };

struct NormCurve {
  std::vector<std::size_t> modes;
  std::vector<double> norms;
  NormRegime regime = NormRegime::below;
  /// (nu+1/2) - 2(nu+1)/p above the critical p, 0 otherwise
  double expected_slope = 0.0;
  /// log-log slope of the norms over the upper half of the modes
  LineFit fit;
  /// at the critical p: slope of log(norm) against log(log j), expected 1/p
  std::optional<LineFit> log_fit;
};

/// 2(nu+1)/(nu+1/2) for nu > -1/2, inf otherwise.
double critical_norm_exponent(Order order);

/// ||psi_j||_{L^p(d mu_nu)} for each j in `modes`; the sup for p = inf
/// includes x = 0.
NormCurve psi_norm_curve(const ZeroTable& table, double p, std::span<const std::size_t> modes,
                         const QuadSpec& quad = {});

/// Coefficients (1 - s_j^2/R^2)^delta psi_j(0) of y -> K_R(0, y).
CoefficientVector kernel_at_zero(const ZeroTable& table, double delta, double radius);

enum class GrowthKind { noweak, nostrong, weak, restricted };
std::string_view growth_kind_name(GrowthKind kind);
std::optional<GrowthKind> parse_growth_kind(std::string_view name);

/// Throws DomainError unless nu > -1/2 and 0 < delta <= nu + 1/2.
void require_growth_hypothesis(Order order, double delta);

struct GrowthPoint {
  double radius;
  double value;
  double normaliser;
  double ratio;
};

struct GrowthReport {
  GrowthKind kind = GrowthKind::noweak;
  double p0 = 1.0;
  double p1 = kInfinity;
  std::vector<GrowthPoint> points;
  /// min ratio / max ratio
  double spread() const;
};

/// Quadrature settings for norms of kernels and other probe functions.
QuadSpec probe_quad();

/// ||K_R(0,.)||_{p0} / (R^{nu-delta+1/2} (log R)^{1/p0}) per radius.
GrowthReport growth_probe_noweak(const ZeroTable& table, double delta, std::span<const double> radii,
                                 const QuadSpec& quad = probe_quad());

/// The four lower-bound probes, each normalised by (log R)^{1/p0}:
///   noweak      as growth_probe_noweak
///   weak        ||B_R g||_{p1,inf} with g the L^{p1}-normalised dual of
///               K_R(0,.) (sup norm and g = sign K_R(0,.) when p1 = inf)
///   nostrong    ||B_R chi_E||_{p0} / ||chi_E||_{p0}, E = (0, 1/R)
///   restricted  the same ratio for E = the larger-measure half of
///               {|B_R g| > lambda}, lambda the maximiser of the weak norm
/// `grid` is the evaluation grid for weak norms and level sets.
GrowthReport growth_probe(GrowthKind kind, const ZeroTable& table, double delta, std::span<const double> radii,
                          std::span<const double> grid, const QuadSpec& quad = probe_quad());

/// Indicator of a finite union of disjoint intervals inside (0,1).
RadialFunction indicator(std::vector<std::pair<double, double>> intervals);

struct WeakTypeReport {
  std::vector<double> ratios;
  double sup = 0.0;
};

/// For each f: ||max_{R in grid} |B_R f| ||_{p,inf} / ||f||_p with the
/// maximal function sampled on `grid`.
WeakTypeReport weak_type_probe(std::span<const RadialFunction> family, const ZeroTable& table, double delta,
                               double p, std::span<const double> radius_grid, std::span<const double> grid,
                               const QuadSpec& quad = probe_quad());

/// ||max_{R in grid} |B_R f| ||_p / ||f||_p for band-limited f, norms from
/// the piecewise-linear interpolant on `grid`.
double maximal_strong_ratio(const CoefficientVector& coeffs, const ZeroTable& table, double delta, double p,
                            std::span<const double> radius_grid, std::span<const double> grid);

struct NikolskiiRatios {
  double sup_norm = 0.0;
  /// ||f||_inf / (R^{2(nu+1)} ||f||_1)
  double l1_ratio = 0.0;
  /// ||f||_inf / (R^{2(nu+1)/p} ||f||_{p,inf}) for each requested p
  std::vector<double> weak_ratios;
};

/// Sup over grid and x = 0; the L^1 norm by quadrature, weak norms on grid.
NikolskiiRatios nikolskii_ratios(const CoefficientVector& coeffs, const ZeroTable& table, double radius,
                                 std::span<const double> ps, std::span<const double> grid,
                                 const QuadSpec& quad = probe_quad());

struct SetInequality {
  double lhs;
  double rhs;
};

/// (int_E x^a dx)^p against 2^p (a+1)^{1-p} int_E x^{(a+1)p-1} dx for a
/// finite union E of disjoint intervals in [0, inf); 1 < p < inf, a > -1.
SetInequality muckenhoupt_sides(std::span<const std::pair<double, double>> intervals, double a, double p);

/// A^{1/p} B^{1/p'}, the constant in the L^1/L^inf to weak-L^p interpolation.
double interpolation_constant(double a_bound, double b_bound, double p);

}  // namespace fbr
