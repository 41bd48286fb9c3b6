#include "weylkit/weyl_transform.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "weylkit/error.hpp"
#include "weylkit/summation.hpp"

namespace weylkit {

double gamma_reciprocal_continued(double x) {
  if (std::isnan(x)) return x;
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  double scale = 1.0;
  while (x < 1.0) {
    scale *= x;
    x += 1.0;
  }
  const double g = std::tgamma(x);
  return std::isinf(g) ? 0.0 : scale / g;
}

double gamma_reciprocal_continued_half(int twice_x) {
  if (twice_x <= 0 && twice_x % 2 == 0) return 0.0;
  return gamma_reciprocal_continued(0.5 * twice_x);
}

CountingSeries::CountingSeries(int dimension, std::vector<PowerTerm> power_terms,
                               std::vector<DeltaTerm> delta_terms)
    : dimension_(dimension),
      power_terms_(std::move(power_terms)),
      delta_terms_(std::move(delta_terms)) {
  if (dimension_ < 1) throw InvariantError("counting-series dimension must be >= 1");
  for (std::size_t i = 1; i < power_terms_.size(); ++i)
    if (!(power_terms_[i].exponent < power_terms_[i - 1].exponent))
      throw InvariantError("counting-series exponents must be strictly decreasing");
  for (const auto& d : delta_terms_)
    if (d.order < 0) throw InvariantError("delta derivative order must be >= 0");
}

CountingSeries transform_coefficients(const HeatKernelCoefficients& hk) {
  const int dim = hk.dimension();
  const double prefactor = std::pow(4.0 * std::numbers::pi, -0.5 * dim);
  const auto coeffs = hk.by_twice_k();

  std::vector<PowerTerm> power;
  std::vector<DeltaTerm> delta;
  for (int j = 0; j < static_cast<int>(coeffs.size()); ++j) {
    const auto k = HalfIndex::from_twice(j);
    const double b = coeffs[static_cast<std::size_t>(j)];
    const int twice_gamma_arg = 2 + dim - j;  // 2 * (1 + D/2 - k)
    if (twice_gamma_arg <= 0 && twice_gamma_arg % 2 == 0) {
      delta.push_back({-twice_gamma_arg / 2, prefactor * b, k});
      continue;
    }
    power.push_back({k, 0.5 * (dim - j),
                     prefactor * b * gamma_reciprocal_continued_half(twice_gamma_arg),
                     j <= dim ? TermKind::Convergent : TermKind::Continued});
  }
  return CountingSeries(dim, std::move(power), std::move(delta));
}

SeriesValue evaluate_counting_series(const CountingSeries& cs, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("counting series is evaluated at lambda > 0 only");
  CompensatedSum acc;
  double last = 0.0;
  for (const auto& term : cs.power_terms()) {
    const double v = term.coefficient * std::pow(lambda, term.exponent);
    acc.add(v);
    last = std::abs(v);
  }
  return {acc.value(), last};
}

CountingSeries density_series(const CountingSeries& cs) {
  std::vector<PowerTerm> power;
  power.reserve(cs.power_terms().size());
  for (const auto& term : cs.power_terms()) {
    const long twice_e = std::lround(2.0 * term.exponent);
    if (static_cast<double>(twice_e) != 2.0 * term.exponent)
      throw InvariantError(
          fmt::format("exponent {} is not a half-integer", term.exponent));
    // C / Gamma-ratio: recover the un-normalized weight and re-normalize with
    // 1/Gamma(e) so that exponents at non-positive integers vanish.
    const double r_up = gamma_reciprocal_continued_half(static_cast<int>(twice_e) + 2);
    const double r_down = gamma_reciprocal_continued_half(static_cast<int>(twice_e));
    const double coefficient =
        r_up != 0.0 ? term.coefficient / r_up * r_down : term.coefficient * term.exponent;
    power.push_back({term.k, term.exponent - 1.0, coefficient, term.kind});
  }
  std::vector<DeltaTerm> delta;
  delta.reserve(cs.delta_terms().size());
  for (const auto& d : cs.delta_terms()) delta.push_back({d.order + 1, d.weight, d.k});
  return CountingSeries(cs.dimension(), std::move(power), std::move(delta));
}

double inverse_check_2d_leading(const CountingSeries& cs, const HeatKernelCoefficients& hk,
                                double lambda) {
  if (cs.dimension() != 2 || hk.dimension() != 2)
    throw UnsupportedError("the N(lambda) = K(1/lambda) leading check is two-dimensional only");
  const double n = evaluate_counting_series(cs, lambda).value;
  const double t = 1.0 / lambda;
  CompensatedSum k_sum;
  for (const auto& term : cs.power_terms())
    k_sum.add(hk.at(term.k) * std::pow(t, term.k.value()));
  const double k = k_sum.value() / (4.0 * std::numbers::pi * t);
  return std::abs(n - k) / std::abs(n);
}

}  // namespace weylkit
