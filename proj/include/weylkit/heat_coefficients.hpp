#pragma once

#include <compare>
#include <span>
#include <vector>

namespace weylkit {

/// Half-integer index k in {0, 1/2, 1, ...}, stored as the integer 2k so that
/// pole and parity classification never touches floating point.
class HalfIndex {
 public:
  constexpr HalfIndex() = default;
  static constexpr HalfIndex from_twice(int twice) { return HalfIndex(twice); }
  static constexpr HalfIndex whole(int k) { return HalfIndex(2 * k); }

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return 0.5 * twice_; }
  constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

  friend constexpr auto operator<=>(HalfIndex, HalfIndex) = default;

 private:
  constexpr explicit HalfIndex(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Small-t expansion K(t) ~ (4 pi t)^{-D/2} sum_k B_k t^k. Coefficients are
/// stored densely for k = 0, 1/2, ..., max_index; absent orders are zeros.
class HeatKernelCoefficients {
 public:
  /// `by_twice_k[j]` is B_{j/2}. Requires B_0 > 0.
  HeatKernelCoefficients(int dimension, std::vector<double> by_twice_k);

  int dimension() const noexcept { return dimension_; }
  HalfIndex max_index() const noexcept {
    return HalfIndex::from_twice(static_cast<int>(coefficients_.size()) - 1);
  }
  /// B_k, or 0 beyond max_index.
  double at(HalfIndex k) const noexcept;
  std::span<const double> by_twice_k() const noexcept { return coefficients_; }

  /// (4 pi t)^{-D/2} sum_k B_k t^k over the stored orders.
  double evaluate(double t) const;

 private:
  int dimension_;
  std::vector<double> coefficients_;
};

}  // namespace weylkit
