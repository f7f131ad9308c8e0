#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fbr/errors.hpp"
#include "fbr/expansion.hpp"
#include "fbr/grid.hpp"
#include "fbr/random.hpp"

namespace {

using fbr::CoefficientVector;
using fbr::Order;
using fbr::System;
using std::numbers::pi;
using std::numbers::sqrt2;

const fbr::ZeroTable& half_table() {
  static const auto t = fbr::compute_zeros(Order(0.5), 80);
  return t;
}

double psi_half(std::size_t j, double x) { return sqrt2 * std::sin(j * pi * x) / x; }

CoefficientVector unit(Order order, std::size_t j, std::size_t n) {
  std::vector<double> a(n, 0.0);
  a[j - 1] = 1.0;
  return CoefficientVector(order, System::psi, a);
}

TEST(Psi, SpecExamples) {
  EXPECT_NEAR(fbr::eval_psi(half_table(), 1, 0.5), 2.0 * sqrt2, 1e-14);
  EXPECT_NEAR(fbr::eval_psi(half_table(), 2, 0.5), 0.0, 1e-14);
  const auto t0 = fbr::compute_zeros(Order(0.0), 3);
  EXPECT_NEAR(fbr::eval_psi(t0, 1, 0.0), sqrt2 / 0.5191474972894669, 1e-12);
  EXPECT_NEAR(fbr::eval_psi(t0, 1, 0.0), 2.72411, 1e-5);
  EXPECT_THROW(fbr::eval_psi(t0, 4, 0.5), std::out_of_range);
  EXPECT_THROW(fbr::eval_psi(t0, 1, -0.1), fbr::DomainError);
}

TEST(Psi, HalfIntegerClosedForm) {
  for (std::size_t j = 1; j <= 50; ++j) {
    for (double x : fbr::uniform_grid(0.0, 1.0, 97)) {
      EXPECT_NEAR(fbr::eval_psi(half_table(), j, x), psi_half(j, x), 1e-10 * std::max(1.0, j * pi)) << j << " " << x;
    }
  }
}

TEST(Phi, SpecExamplesAndRelation) {
  EXPECT_NEAR(fbr::eval_phi(half_table(), 1, 0.5), sqrt2, 1e-14);
  const auto t0 = fbr::compute_zeros(Order(0.0), 3);
  EXPECT_NEAR(fbr::eval_phi(t0, 1, 0.9),
              std::sqrt(1.8) * fbr::bessel_j(Order(0.0), 0.9 * t0.zero(1)) / t0.normalizer(1), 1e-14);
  EXPECT_THROW(fbr::eval_phi(t0, 1, 0.0), fbr::DomainError);
  for (double nu : {-0.4, 0.0, 1.3}) {
    const auto t = fbr::compute_zeros(Order(nu), 10);
    for (double x : fbr::uniform_grid(0.0, 1.0, 1000)) {
      for (std::size_t j : {1u, 4u, 10u}) {
        const double phi = fbr::eval_phi(t, j, x);
        const double rel = std::pow(x, nu + 0.5) * fbr::eval_psi(t, j, x);
        EXPECT_NEAR(phi, rel, 1e-12 * std::max(std::abs(phi), 1e-300) + 1e-15);
      }
    }
  }
}

TEST(Coefficients, ModeProjectsToUnitVector) {
  const auto t0 = fbr::compute_zeros(Order(0.0), 12);
  fbr::RadialFunction psi1{[&](double x) { return fbr::eval_psi(t0, 1, x); }, {}, t0.zero(1)};
  const auto a = fbr::coefficients(psi1, t0, 10, System::psi);
  for (std::size_t j = 1; j <= 10; ++j) EXPECT_NEAR(a(j), j == 1 ? 1.0 : 0.0, 1e-9) << j;
}

TEST(Coefficients, PhiSystemOfSmoothFunction) {
  const auto t = fbr::compute_zeros(Order(0.5), 8);
  // b_j of phi_3 in L^2(dx)
  fbr::RadialFunction phi3{[&](double x) { return fbr::eval_phi(t, 3, x); }, {}, t.zero(3)};
  const auto b = fbr::coefficients(phi3, t, 6, System::phi);
  for (std::size_t j = 1; j <= 6; ++j) EXPECT_NEAR(b(j), j == 3 ? 1.0 : 0.0, 1e-9);
}

TEST(Coefficients, GridFunctionInput) {
  const auto grid = fbr::uniform_grid(0.0, 1.0, 4000);
  std::vector<double> v;
  for (double x : grid) v.push_back(x * (1.0 - x));
  const fbr::GridFunction g(grid, v);
  const auto t = fbr::compute_zeros(Order(0.0), 10);
  fbr::RadialFunction exact{[](double x) { return x * (1.0 - x); }, {}, 0.0};
  const auto a = fbr::coefficients(g, t, 5, System::psi);
  const auto e = fbr::coefficients(exact, t, 5, System::psi);
  for (std::size_t j = 1; j <= 5; ++j) EXPECT_NEAR(a(j), e(j), 1e-6);
}

TEST(Coefficients, Errors) {
  const auto t = fbr::compute_zeros(Order(0.0), 5);
  fbr::RadialFunction one{[](double) { return 1.0; }, {}, 0.0};
  EXPECT_THROW(fbr::coefficients(one, t, 6, System::psi), fbr::TableTooShort);
  EXPECT_THROW(fbr::coefficients(one, t, 0, System::psi), fbr::DomainError);
  fbr::QuadSpec tight;
  tight.panels_per_wavelength = 1;
  tight.min_panels = 1;
  tight.tolerance = 1e-15;
  fbr::RadialFunction wild{[](double x) { return std::sin(5000.0 * x); }, {}, 0.0};
  EXPECT_THROW(fbr::coefficients(wild, t, 5, System::psi, tight), fbr::NonConvergence);
}

TEST(Types, Validation) {
  EXPECT_THROW(CoefficientVector(Order(0.0), System::psi, {}), fbr::DomainError);
  EXPECT_THROW(CoefficientVector(Order(0.0), System::psi, {NAN}), fbr::DomainError);
  EXPECT_THROW(fbr::GridFunction({0.0, 0.5}, {1.0, 1.0}), fbr::DomainError);
  EXPECT_THROW(fbr::GridFunction({0.5, 0.4}, {1.0, 1.0}), fbr::DomainError);
  EXPECT_THROW(fbr::GridFunction({0.5}, {1.0, 1.0}), fbr::DomainError);
  EXPECT_THROW(fbr::RieszPlan(half_table(), 0.0, 10.0), fbr::DomainError);
  EXPECT_THROW(fbr::RieszPlan(half_table(), 1.0, -1.0), fbr::DomainError);
  const fbr::GridFunction g({0.25, 0.75}, {1.0, 3.0});
  EXPECT_DOUBLE_EQ(g.interpolate(0.5), 2.0);
  EXPECT_DOUBLE_EQ(g.interpolate(0.1), 1.0);
  EXPECT_DOUBLE_EQ(g.interpolate(0.9), 3.0);
}

TEST(PartialSum, IndexSelection) {
  const auto& t = half_table();
  const Order o(0.5);
  EXPECT_EQ(fbr::partial_sum(unit(o, 1, 5), t, 3.0, 0.3), 0.0);
  EXPECT_NEAR(fbr::partial_sum(unit(o, 1, 5), t, 4.0, 0.3), psi_half(1, 0.3), 1e-14);
  const CoefficientVector f13(o, System::psi, {1.0, 0.0, 1.0});
  EXPECT_NEAR(fbr::partial_sum(f13, t, 7.0, 0.3), psi_half(1, 0.3), 1e-14);
  EXPECT_THROW(fbr::partial_sum(f13, t, 20.0, 0.3), std::length_error);
}

TEST(BochnerRiesz, SpecExamples) {
  const auto& t = half_table();
  const Order o(0.5);
  EXPECT_EQ(fbr::bochner_riesz(unit(o, 1, 4), t, fbr::RieszPlan(t, 1.0, 3.0), 0.5), 0.0);
  const fbr::RieszPlan plan(t, 1.0, pi * sqrt2);
  EXPECT_NEAR(fbr::bochner_riesz(unit(o, 1, 4), t, plan, 0.3), psi_half(1, 0.3) / 2.0, 1e-14);
  const fbr::RieszPlan ten(t, 1.0, 10.0);
  EXPECT_NEAR(fbr::bochner_riesz(unit(o, 1, 4), t, ten, 0.5), (1.0 - pi * pi / 100.0) * 2.0 * sqrt2, 1e-14);
}

TEST(RieszFactor, EdgeCases) {
  EXPECT_EQ(fbr::riesz_factor(5.0, 4.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(fbr::riesz_factor(2.0, 4.0, 1.0), 0.75);
  EXPECT_EQ(fbr::riesz_factor(4.0, 4.0, 0.0), 1.0);
}

TEST(MaximalRiesz, SpecExamples) {
  const auto& t = half_table();
  const Order o(0.5);
  EXPECT_EQ(fbr::maximal_riesz(unit(o, 1, 3), t, 1.0, std::vector<double>{1.0, 2.0, 3.0}, 0.4), 0.0);
  const std::vector<double> grid{4.0, 7.0, 20.0};
  EXPECT_NEAR(fbr::maximal_riesz(unit(o, 1, 6), t, 1.0, grid, 0.4),
              (1.0 - pi * pi / 400.0) * std::abs(psi_half(1, 0.4)), 1e-14);
  const CoefficientVector f(o, System::psi, {1.0, -1.0, 0.0, 0.0, 0.0, 0.0});
  const double x = 0.3;
  double best = 0.0;
  for (double r : grid) {
    double v = 0.0;
    for (std::size_t j = 1; j <= 2; ++j) {
      const double s = j * pi;
      if (s <= r) v += (j == 1 ? 1.0 : -1.0) * (1.0 - s * s / (r * r)) * psi_half(j, x);
    }
    best = std::max(best, std::abs(v));
  }
  EXPECT_NEAR(fbr::maximal_riesz(f, t, 1.0, grid, x), best, 1e-13);
  EXPECT_THROW(fbr::maximal_riesz(f, t, 1.0, std::vector<double>{}, x), std::invalid_argument);
}

TEST(RadiusGrid, Geometric) {
  const auto g = fbr::geometric_radius_grid(10.0, 20.0, 2.0);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_DOUBLE_EQ(g[0], 10.0);
  EXPECT_DOUBLE_EQ(g[1], 20.0);
  EXPECT_THROW(fbr::geometric_radius_grid(10.0, 5.0), fbr::DomainError);
}

TEST(DelayedCoefficients, SpecExamplesAndMoments) {
  EXPECT_EQ(fbr::solve_delayed_coeffs(0), std::vector<double>{1.0});
  const auto a1 = fbr::solve_delayed_coeffs(1);
  EXPECT_NEAR(a1[0], -1.0 / 3.0, 1e-12);
  EXPECT_NEAR(a1[1], 4.0 / 3.0, 1e-12);
  const auto a2 = fbr::solve_delayed_coeffs(2);
  EXPECT_NEAR(a2[0], 1.0 / 24.0, 1e-12);
  EXPECT_NEAR(a2[1], -16.0 / 15.0, 1e-12);
  EXPECT_NEAR(a2[2], 81.0 / 40.0, 1e-12);
  for (unsigned r = 0; r <= 12; ++r) {
    const auto a = fbr::solve_delayed_coeffs(r);
    for (unsigned j = 0; j <= r; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < a.size(); ++l) s += a[l] / std::pow(l + 1.0, 2.0 * j);
      EXPECT_NEAR(s, j == 0 ? 1.0 : 0.0, 1e-10) << r << " " << j;
    }
  }
  EXPECT_THROW(fbr::solve_delayed_coeffs(13), fbr::ConditioningError);
}

TEST(DelayedMeans, SingleModeIdentity) {
  const auto& t = half_table();
  const fbr::DelayedMeansPlan plan(1, 4.0);
  EXPECT_NEAR(fbr::delayed_means(unit(Order(0.5), 1, 2), t, plan, 0.3), psi_half(1, 0.3), 1e-13);
  // r = 0 reduces to the plain partial sum
  const fbr::DelayedMeansPlan zero(0, 7.0);
  const CoefficientVector f(Order(0.5), System::psi, {0.5, 2.0, 1.0});
  EXPECT_NEAR(fbr::delayed_means(f, t, zero, 0.3), fbr::partial_sum(f, t, 7.0, 0.3), 1e-14);
  const auto small = fbr::compute_zeros(Order(0.5), 3);
  EXPECT_THROW(fbr::delayed_means(f, small, fbr::DelayedMeansPlan(2, 5.0), 0.3), fbr::TableTooShort);
}

TEST(DelayedMeans, ReproducesBandLimitedFunctions) {
  const auto t = fbr::zeros_covering(Order(1.3), 4.0 * 20.0);
  const auto n = t.count_below(4.0 * 20.0);
  for (const auto& member : fbr::band_limited_family(t, 20.0, 6, 7)) {
    std::vector<double> a(member.values().begin(), member.values().end());
    a.resize(n, 0.0);
    const CoefficientVector f(Order(1.3), System::psi, a);
    for (unsigned r : {1u, 2u, 3u}) {
      const fbr::DelayedMeansPlan plan(r, 20.0);
      for (double x : fbr::uniform_grid(0.0, 1.0, 50)) {
        const double v = fbr::series_value(f, t, x);
        EXPECT_NEAR(fbr::delayed_means(f, t, plan, x), v, 1e-8 * std::max(1.0, std::abs(v)));
      }
    }
  }
}

TEST(HardyRiesz, SingleAndTwoModes) {
  const auto& t = half_table();
  const Order o(0.5);
  const auto r1 = fbr::hardy_riesz_ratio(unit(o, 1, 10), t, 1.0, 0.3, psi_half(1, 0.3), 8);
  ASSERT_EQ(r1.size(), 8u);
  for (const auto& r : r1) {
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(*r, 0.0, 1e-13);
  }
  const CoefficientVector f12(o, System::psi, {1.0, 1.0, 0.0, 0.0});
  const double x = 0.3;
  const auto r2 = fbr::hardy_riesz_ratio(f12, t, 1.0, x, psi_half(1, x) + psi_half(2, x), 3);
  ASSERT_TRUE(r2[0].has_value());
  // sup over the grid of |B_t f(x)| up to s_2, checked against a direct scan
  double sup = 0.0;
  for (double r = pi / 2.0; r <= 2.0 * pi; r *= 1.05) sup = std::max(sup, std::abs(fbr::bochner_riesz(f12, t, fbr::RieszPlan(t, 1.0, r), x)));
  sup = std::max(sup, std::abs(fbr::bochner_riesz(f12, t, fbr::RieszPlan(t, 1.0, 2.0 * pi), x)));
  EXPECT_NEAR(*r2[0], std::abs(psi_half(2, x)) / sup, 1e-12);
  EXPECT_THROW(fbr::hardy_riesz_ratio(f12, t, 1.0, x, 0.0, 80), fbr::TableTooShort);
}

TEST(HardyRiesz, BoundedForSmoothFunction) {
  const auto t = fbr::compute_zeros(Order(0.0), 130);
  fbr::RadialFunction f{[](double x) { return x * (1.0 - x); }, {}, 0.0};
  const auto a = fbr::coefficients(f, t, 129, System::psi);
  const auto small = fbr::hardy_riesz_ratio(a, t, 1.0, 0.4, 0.24, 64);
  const auto big = fbr::hardy_riesz_ratio(a, t, 1.0, 0.4, 0.24, 128);
  double m_small = 0.0, m_big = 0.0;
  for (const auto& r : small) if (r) m_small = std::max(m_small, *r);
  for (const auto& r : big) if (r) m_big = std::max(m_big, *r);
  EXPECT_TRUE(std::isfinite(m_big));
  EXPECT_LT(m_big, 2.0 * m_small);
}

}  // namespace
