#include "weylkit/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "weylkit/error.hpp"

namespace weylkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxExpansions = 64;
constexpr int kScanPoints = 64;
constexpr int kMaxRefineSteps = 200;

}  // namespace

double eigenvalue_solve(const CountingSeries& cs, std::uint64_t n) {
  if (n == 0) throw DomainError("eigenvalue index starts at 1");
  const auto& terms = cs.power_terms();
  if (terms.empty() || !(terms.front().coefficient > 0.0) || !(terms.front().exponent > 0.0))
    throw DomainError("counting series needs a positive leading power term");

  const double target = static_cast<double>(n);
  const CountingSeries density = density_series(cs);
  auto f = [&](double x) { return evaluate_counting_series(cs, x).value - target; };

  const double weyl = std::pow(target / terms.front().coefficient, 1.0 / terms.front().exponent);
  double lo = 0.5 * weyl;
  double hi = 2.0 * weyl;
  int grow = 0;
  while (f(hi) <= 0.0) {
    if (++grow > kMaxExpansions)
      throw RootFindError(fmt::format("N(lambda) stays below {} up to lambda = {}", n, hi), lo, hi);
    hi *= 2.0;
  }
  // Walk down from hi on a geometric grid to isolate the uppermost sign
  // change, extending the grid below lo while N stays above n.
  double upper = hi;
  double lower = hi;
  bool found = false;
  for (grow = 0; grow <= kMaxExpansions && !found; ++grow) {
    const double ratio = std::pow(lo / upper, 1.0 / kScanPoints);
    const double top = upper;
    for (int i = 1; i <= kScanPoints; ++i) {
      lower = (i == kScanPoints) ? lo : top * std::pow(ratio, i);
      if (f(lower) <= 0.0) {
        found = true;
        break;
      }
      upper = lower;
    }
    lo *= 0.5;
  }
  if (!found)
    throw RootFindError(fmt::format("N(lambda) stays above {} down to lambda = {}", n, lower), lower,
                        hi);

  double f_lower = f(lower);
  if (f_lower == 0.0) return lower;
  double x = 0.5 * (lower + upper);
  for (int it = 0; it < kMaxRefineSteps; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lower = x;
      f_lower = fx;
    } else {
      upper = x;
    }
    const double slope = evaluate_counting_series(density, x).value;
    double next = slope > 0.0 ? x - fx / slope : lower - 1.0;
    if (!(next > lower && next < upper)) next = 0.5 * (lower + upper);
    if (std::abs(next - x) <= 1e-14 * x || upper - lower <= 1e-14 * x) return next;
    x = next;
  }
  throw RootFindError(fmt::format("eigenvalue {} did not converge", n), lower, upper);
}

SpectrumAsymptotics expansion_coefficients(const HeatKernelCoefficients& hk) {
  if (hk.max_index().twice() < 2)
    throw InsufficientCoefficientsError("the expansion needs B_0, B_{1/2} and B_1");
  const double d = hk.dimension();
  const double b0 = hk.at(HalfIndex::whole(0));
  const double b_half = hk.at(HalfIndex::from_twice(1));
  const double b1 = hk.at(HalfIndex::whole(1));
  if (!(b0 > 0.0)) throw DomainError("B_0 must be positive");

  const double g_top = std::tgamma(0.5 * d + 1.0);
  const double g_half = std::tgamma(0.5 * d + 0.5);
  const double g_mid = std::tgamma(0.5 * d);

  const double a0 = 4.0 * kPi * std::pow(g_top, 2.0 / d) * std::pow(b0, -2.0 / d);
  const double a1 = -4.0 * std::sqrt(kPi) * std::pow(g_top, 1.0 + 1.0 / d) / (d * g_half) *
                    b_half / std::pow(b0, 1.0 + 1.0 / d);
  const double a2 =
      d * g_mid * g_mid / (4.0 * g_half * g_half) * (b_half / b0) * (b_half / b0) - b1 / b0;
  return {hk.dimension(), {a0, a1, a2}};
}

double evaluate_expansion(const SpectrumAsymptotics& sa, std::uint64_t n) {
  if (n == 0) throw DomainError("eigenvalue index starts at 1");
  const double x = static_cast<double>(n);
  const double d = sa.dimension;
  return sa.alpha[0] * std::pow(x, 2.0 / d) + sa.alpha[1] * std::pow(x, 1.0 / d) + sa.alpha[2];
}

SpectrumAsymptotics tabulated_ball_expansion(int dimension, double radius,
                                             BoundaryCondition boundary) {
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  const double s = boundary == BoundaryCondition::Dirichlet ? 1.0 : -1.0;
  const double r2 = radius * radius;
  const double pi2 = kPi * kPi;
  switch (dimension) {
    case 3:
      return {3,
              {1.5 * std::cbrt(6.0 * pi2) / r2, s * 0.375 * std::pow(6.0 * pi2, 2.0 / 3.0) / r2,
               (27.0 / 64.0 * pi2 - 2.0) / r2}};
    case 4:
      return {4, {8.0 / r2, s * 16.0 * std::sqrt(2.0) / 3.0 / r2, -26.0 / 9.0 / r2}};
    case 5:
      return {5,
              {0.5 * std::pow(450.0 * std::sqrt(2.0) * kPi, 0.4) / r2,
               s * 15.0 * kPi / 32.0 * std::pow(3600.0 * kPi, 0.2) / r2,
               (1125.0 / 1024.0 * pi2 - 20.0 / 3.0) / r2}};
    default:
      throw UnsupportedError(fmt::format("no tabulated ball spectrum for D = {}", dimension));
  }
}

}  // namespace weylkit
