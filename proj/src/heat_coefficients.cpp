#include "weylkit/heat_coefficients.hpp"

#include <cmath>
#include <numbers>

#include "weylkit/error.hpp"
#include "weylkit/summation.hpp"

namespace weylkit {

HeatKernelCoefficients::HeatKernelCoefficients(int dimension, std::vector<double> by_twice_k)
    : dimension_(dimension), coefficients_(std::move(by_twice_k)) {
  if (dimension_ < 1) throw InvariantError("heat-kernel dimension must be >= 1");
  if (coefficients_.empty()) throw InvariantError("heat-kernel coefficient list is empty");
  if (!(coefficients_.front() > 0.0)) throw InvariantError("B_0 must be positive");
  for (double b : coefficients_)
    if (!std::isfinite(b)) throw InvariantError("heat-kernel coefficient is not finite");
}

double HeatKernelCoefficients::at(HalfIndex k) const noexcept {
  const int j = k.twice();
  if (j < 0 || j >= static_cast<int>(coefficients_.size())) return 0.0;
  return coefficients_[static_cast<std::size_t>(j)];
}

double HeatKernelCoefficients::evaluate(double t) const {
  if (!(t > 0.0)) throw DomainError("heat-kernel series needs t > 0");
  const double sqrt_t = std::sqrt(t);
  CompensatedSum acc;
  double power = 1.0;
  for (double b : coefficients_) {
    acc.add(b * power);
    power *= sqrt_t;
  }
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * dimension_) * acc.value();
}

}  // namespace weylkit
