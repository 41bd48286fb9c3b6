#pragma once

#include <vector>

#include "weylkit/heat_coefficients.hpp"

namespace weylkit {

/// 1/Gamma(x) on the whole real line. For x >= 1 this is the standard
/// gamma function; below that it is continued by 1/Gamma(x) = x/Gamma(x+1),
/// which makes it vanish exactly at 0, -1, -2, ...
double gamma_reciprocal_continued(double x);

/// Same continuation for a half-integer argument x = twice_x / 2. Pole
/// detection uses the integer, so it is exact.
double gamma_reciprocal_continued_half(int twice_x);

/// Which sum of the renormalized counting series a power term belongs to:
/// k <= D/2, or k - D/2 a positive half-odd integer (continued Gamma).
enum class TermKind { Convergent, Continued };

struct PowerTerm {
  HalfIndex k;
  double exponent;  // D/2 - k for a counting series
  double coefficient;
  TermKind kind;
};

/// weight * delta^{(order)}(lambda), supported at lambda = 0.
struct DeltaTerm {
  int order;
  double weight;
  HalfIndex k;  // heat-kernel order the term came from
};

/// Large-lambda expansion sum_k C_k lambda^{exponent_k} plus distributional
/// terms at the origin. Power exponents are strictly decreasing.
class CountingSeries {
 public:
  CountingSeries(int dimension, std::vector<PowerTerm> power_terms,
                 std::vector<DeltaTerm> delta_terms);

  int dimension() const noexcept { return dimension_; }
  const std::vector<PowerTerm>& power_terms() const noexcept { return power_terms_; }
  const std::vector<DeltaTerm>& delta_terms() const noexcept { return delta_terms_; }

 private:
  int dimension_;
  std::vector<PowerTerm> power_terms_;
  std::vector<DeltaTerm> delta_terms_;
};

/// Renormalized transform of heat-kernel coefficients into counting-function
/// coefficients, C_k = (4 pi)^{-D/2} B_k / Gamma(1 + D/2 - k). Orders with
/// k = 1 + D/2 + l become delta^{(l)} terms of weight (4 pi)^{-D/2} B_k.
CountingSeries transform_coefficients(const HeatKernelCoefficients& hk);

struct SeriesValue {
  double value;
  /// |last included term|: a truncation indicator for an asymptotic series,
  /// not an error bound.
  double last_term;
};

/// Sum of the power terms at lambda > 0. Delta terms vanish there.
SeriesValue evaluate_counting_series(const CountingSeries& cs, double lambda);

/// Term-by-term lambda derivative: power terms pick up 1/Gamma(exponent)
/// in place of 1/Gamma(exponent + 1), delta orders shift by one.
CountingSeries density_series(const CountingSeries& cs);

/// Relative deviation |N(lambda) - K(1/lambda)| / N(lambda) between the
/// counting series and the heat-kernel series on the same orders. D = 2 only.
double inverse_check_2d_leading(const CountingSeries& cs, const HeatKernelCoefficients& hk,
                                double lambda);

}  // namespace weylkit
