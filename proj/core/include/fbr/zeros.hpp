#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fbr/specfun.hpp"

namespace fbr {

/// First n positive zeros s_1 < ... < s_n of J_nu with the normalisers
/// |J_{nu+1}(s_j)|. Immutable; `extended` builds a longer copy.
///
/// Storage is 0-based; functions taking a mode number j use 1..size().
class ZeroTable {
 public:
  /// Scans on a pi/8 step from the McMahon guess
  /// beta - (4nu^2 - 1)/(8 beta), beta = (j + nu/2 - 1/4) pi, minus pi/2,
  /// then refines by safeguarded Newton (|J| <= 1e-13, 40 iterations) with a
  /// 200-step bisection fallback. Every zero is certified by a sign change
  /// across an interval of width 1e-9. Throws ZeroBracketError.
  static ZeroTable compute(Order order, std::size_t n);

  /// Same zeros plus further ones up to n. Existing entries are reused.
  ZeroTable extended(std::size_t n) const;

  Order order() const noexcept { return order_; }
  std::size_t size() const noexcept { return zeros_.size(); }
  std::span<const double> zeros() const noexcept { return zeros_; }
  std::span<const double> normalizers() const noexcept { return normalizers_; }

  /// s_j for mode number j in 1..size().
  double zero(std::size_t j) const;
  /// |J_{nu+1}(s_j)| for mode number j in 1..size().
  double normalizer(std::size_t j) const;
  double last() const noexcept { return zeros_.back(); }

  /// max_j s_j / j; the table-level constant in s_j <= C j.
  double growth_constant() const noexcept { return growth_constant_; }

  /// N(R) = #{j : s_j <= R}. Throws TableTooShort when R > last().
  std::size_t count_below(double radius) const;

  /// FNV-1a over the shortest round-trip decimal text of every entry.
  std::uint64_t checksum() const;

 private:
  ZeroTable(Order order, std::vector<double> zeros, std::vector<double> normalizers);
  void append_until(std::size_t n);

  Order order_;
  std::vector<double> zeros_;
  std::vector<double> normalizers_;
  double growth_constant_ = 0.0;
};

inline ZeroTable compute_zeros(Order order, std::size_t n) { return ZeroTable::compute(order, n); }

inline std::size_t count_zeros_below(const ZeroTable& table, double radius) {
  return table.count_below(radius);
}

/// Smallest table (in steps of a few zeros) whose last zero is >= radius.
ZeroTable zeros_covering(Order order, double radius);

}  // namespace fbr
