#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "fbr/errors.hpp"
#include "fbr/expansion.hpp"
#include "fbr/grid.hpp"
#include "fbr/kernels.hpp"
#include "fbr/random.hpp"

namespace {

using fbr::Order;
using fbr::Region;
using std::numbers::pi;
using std::numbers::sqrt2;

TEST(Kernel, EmptySumBelowFirstZero) {
  const auto t = fbr::compute_zeros(Order(0.0), 5);
  EXPECT_EQ(fbr::kernel(t, 1.0, 2.0, 0.3, 0.6), 0.0);
  EXPECT_EQ(fbr::kernel_mu(t, 1.0, 2.0, 0.0, 0.6), 0.0);
}

TEST(Kernel, SingleModeClosedForms) {
  const auto t = fbr::compute_zeros(Order(0.5), 5);
  const double R = 5.0, x = 0.3, y = 0.7;
  const double factor = 1.0 - pi * pi / (R * R);
  const double phi1x = sqrt2 * std::sin(pi * x), phi1y = sqrt2 * std::sin(pi * y);
  EXPECT_NEAR(fbr::kernel(t, 1.0, R, x, y), factor * phi1x * phi1y, 1e-14);
  EXPECT_NEAR(fbr::kernel_mu(t, 1.0, R, 0.0, y), factor * sqrt2 * pi * sqrt2 * std::sin(pi * y) / y, 1e-13);
}

TEST(Kernel, SymmetryAndTransference) {
  for (double nu : {-0.4, 0.0, 1.5}) {
    const Order order(nu);
    const auto t = fbr::zeros_covering(order, 80.0);
    const fbr::CounterRng rng(99);
    for (std::uint64_t k = 0; k < 100; ++k) {
      const double x = rng.uniform(2 * k, 0.01, 0.99), y = rng.uniform(2 * k + 1, 0.01, 0.99);
      const double kxy = fbr::kernel(t, 0.7, 80.0, x, y);
      EXPECT_EQ(kxy, fbr::kernel(t, 0.7, 80.0, y, x));
      const double mu = fbr::kernel_mu(t, 0.7, 80.0, x, y) * std::pow(x * y, nu + 0.5);
      EXPECT_NEAR(mu, kxy, 1e-10 * std::max(std::abs(kxy), 1e-6));
    }
  }
}

TEST(Kernel, TableTooShort) {
  const auto t = fbr::compute_zeros(Order(0.0), 3);
  EXPECT_THROW(fbr::kernel(t, 1.0, 50.0, 0.3, 0.6), fbr::TableTooShort);
}

TEST(Regions, SpecExamples) {
  EXPECT_EQ(fbr::classify_region(100.0, 0.01, 0.01), Region::A1);
  EXPECT_EQ(fbr::classify_region(100.0, 0.5, 0.505), Region::A2);
  EXPECT_EQ(fbr::classify_region(100.0, 0.8, 0.3), Region::A3);
  EXPECT_EQ(fbr::classify_region(100.0, 0.3, 0.8), Region::A4);
  EXPECT_EQ(fbr::classify_region(100.0, 0.5, 0.7), Region::A5);
  EXPECT_EQ(fbr::region_name(Region::A3), "A3");
}

TEST(Regions, PartitionMatchesDefinitions) {
  const auto g = fbr::uniform_grid(0.0, 1.0, 200);
  std::array<std::size_t, fbr::kRegionCount> counts{};
  const double R = 40.0;
  for (double x : g) {
    for (double y : g) {
      const Region r = fbr::classify_region(R, x, y);
      ++counts[static_cast<std::size_t>(r)];
      const bool a1 = x <= 4 / R && y <= 4 / R;
      const bool a2 = !a1 && std::abs(x - y) <= 2 / R;
      const bool a3 = !a1 && !a2 && x >= 4 / R && y <= x / 2;
      const bool a4 = !a1 && !a2 && !a3 && y >= 4 / R && x <= y / 2;
      const Region expect = a1 ? Region::A1 : a2 ? Region::A2 : a3 ? Region::A3 : a4 ? Region::A4 : Region::A5;
      EXPECT_EQ(r, expect);
    }
  }
  std::size_t total = 0;
  for (auto c : counts) {
    EXPECT_GT(c, 0u);
    total += c;
  }
  EXPECT_EQ(total, 200u * 200u);
}

TEST(KernelBound, RegionFormulas) {
  const Order half(0.5);
  EXPECT_DOUBLE_EQ(fbr::kernel_bound(half, 1.0, 100.0, 0.5, 0.505), 100.0);
  EXPECT_NEAR(fbr::kernel_bound(half, 1.0, 100.0, 0.01, 0.02), 0.01 * 0.02 * 1e6, 1e-9);
  EXPECT_NEAR(fbr::kernel_bound(half, 0.5, 100.0, 0.8, 0.3), 1.0 / (10.0 * std::pow(0.5, 1.5)), 1e-14);
  // Phi < 1 branch: Ry = 1
  const double b = fbr::kernel_bound(Order(0.0), 1.0, 100.0, 0.5, 0.01);
  EXPECT_EQ(fbr::classify_region(100.0, 0.5, 0.01), Region::A3);
  EXPECT_NEAR(b, 1.0 * 1.0 / (100.0 * 0.49 * 0.49), 1e-14);
}

TEST(BoundSweep, SingleModeRatioAndUnsampledRegions) {
  const auto t = fbr::compute_zeros(Order(0.5), 4);
  const double R = 5.0;
  const auto grid = fbr::uniform_grid(0.4, 0.6, 20);
  const std::vector<double> radii{R};
  const auto sweep = fbr::bound_ratio_sweep(t, 1.0, radii, grid, true);
  ASSERT_EQ(sweep.rows.size(), 1u);
  const auto& row = sweep.rows[0];
  EXPECT_TRUE(row.regions[0].sampled());
  for (std::size_t r = 1; r < fbr::kRegionCount; ++r) EXPECT_FALSE(row.regions[r].sampled());
  EXPECT_FALSE(sweep.variation(Region::A3).has_value());
  EXPECT_EQ(sweep.samples.size(), 20u * 19u);
  double best = 0.0;
  for (const auto& s : sweep.samples) {
    EXPECT_NE(s.x, s.y);
    const double k = (1.0 - pi * pi / (R * R)) * 2.0 * std::sin(pi * s.x) * std::sin(pi * s.y);
    EXPECT_NEAR(s.value, k, 1e-14);
    best = std::max(best, std::abs(k) / (s.x * s.y * R * R * R));
  }
  EXPECT_NEAR(row.regions[0].max_ratio, best, 1e-14);
}

TEST(BoundSweep, RatiosStableWhenRadiusDoubles) {
  const auto t = fbr::zeros_covering(Order(0.0), 100.0);
  const auto grid = fbr::evaluation_grid(96);
  const std::vector<double> radii{50.0, 100.0};
  const auto sweep = fbr::bound_ratio_sweep(t, 1.0, radii, grid);
  for (std::size_t r = 0; r < fbr::kRegionCount; ++r) {
    const auto v = sweep.variation(static_cast<Region>(r));
    ASSERT_TRUE(v.has_value());
    EXPECT_LT(*v, 3.0) << r;
  }
}

TEST(KernelZero, SmallArgumentLimit) {
  for (double nu : {0.0, 0.5, 1.5}) {
    for (double delta : {0.3, 1.0}) {
      const double R = 40.0;
      const double expect = std::pow(2.0, delta - nu) * fbr::gamma(delta + 1.0) / fbr::gamma(nu + 1.0) *
                            std::pow(R, 2.0 * (nu + 1.0)) /
                            (std::pow(2.0, nu + delta + 1.0) * fbr::gamma(nu + delta + 2.0));
      EXPECT_NEAR(fbr::kernel_zero_leading(Order(nu), delta, R, 1e-9), expect, 1e-12 * expect);
    }
  }
  EXPECT_THROW(fbr::kernel_zero_leading(Order(-0.5), 1.0, 10.0, 0.5), fbr::DomainError);
}

TEST(KernelZero, RemainderIsSubtraction) {
  const Order order(0.0);
  const auto t = fbr::zeros_covering(order, 30.0);
  const double y = 0.5;
  const double series = fbr::kernel_mu(t, 1.0, 30.0, 0.0, y);
  EXPECT_NEAR(fbr::kernel_zero_remainder(t, 1.0, 30.0, y), series - fbr::kernel_zero_leading(order, 1.0, 30.0, y),
              1e-12 * std::abs(series));
  EXPECT_DOUBLE_EQ(fbr::kernel_zero_remainder(t, 1.0, 2.0, y), -fbr::kernel_zero_leading(order, 1.0, 2.0, y));
}

TEST(KernelZero, RemainderWithinBoundAtFixedPoint) {
  const Order order(0.5);
  const auto t = fbr::zeros_covering(order, 50.0);
  const double rem = std::abs(fbr::kernel_zero_remainder(t, 1.0, 50.0, 0.3));
  const double series = std::abs(fbr::kernel_mu(t, 1.0, 50.0, 0.0, 0.3));
  EXPECT_LT(rem, 5.0 * fbr::remainder_bound(order, 1.0, 50.0, 0.3));
  EXPECT_LT(rem, series + fbr::remainder_bound(order, 1.0, 50.0, 0.3));
}

TEST(KernelZero, RemainderScalingFit) {
  const Order order(0.5);
  const std::vector<double> radii{25.0, 50.0, 100.0, 200.0};
  const auto t = fbr::zeros_covering(order, 200.0);
  const auto grid = fbr::uniform_grid(0.0, 1.0, 1000);
  const auto s = fbr::remainder_scaling(t, 1.0, radii, grid);
  ASSERT_EQ(s.far.size(), 4u);
  EXPECT_LE(s.far_fit.slope, 0.5 - 1.0 + 0.5 + 0.15);
  for (double n : s.near) EXPECT_GE(n, 0.0);
}

}  // namespace
