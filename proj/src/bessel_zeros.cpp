#include "weylkit/bessel_zeros.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "weylkit/error.hpp"

namespace weylkit {

namespace {

// Zeros of consecutive orders interlace: between two neighbouring zeros of
// order v there is exactly one zero of order v+1. Order-0 zeros seed the
// brackets; each higher order is refined inside them.

struct SphericalFamily {
  static double value(int l, double x) { return std::sph_bessel(static_cast<unsigned>(l), x); }
  static double derivative(int l, double x) {
    if (l == 0) return -std::sph_bessel(1u, x);
    return std::sph_bessel(static_cast<unsigned>(l - 1), x) - (l + 1) / x * value(l, x);
  }
};

struct CylindricalFamily {
  static double value(int m, double x) { return std::cyl_bessel_j(static_cast<double>(m), x); }
  static double derivative(int m, double x) {
    if (m == 0) return -std::cyl_bessel_j(1.0, x);
    return std::cyl_bessel_j(static_cast<double>(m - 1), x) - m / x * value(m, x);
  }
};

constexpr double kRelTol = 1e-14;
constexpr int kMaxIterations = 200;

// Safeguarded Newton: a Newton step is taken when it stays inside the
// current bracket, otherwise the bracket is bisected.
template <class Family>
double refine(int order, double lo, double hi) {
  double f_lo = Family::value(order, lo);
  const double f_hi = Family::value(order, hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0))
    throw RootFindError(fmt::format("order {}: no sign change on [{}, {}] (f = {}, {})", order,
                                    lo, hi, f_lo, f_hi),
                        lo, hi);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double f = Family::value(order, x);
    if (f == 0.0) return x;
    if ((f > 0.0) == (f_lo > 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    const double df = Family::derivative(order, x);
    double next = (df != 0.0) ? x - f / df : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= kRelTol * x || hi - lo <= kRelTol * x) return next;
    x = next;
  }
  throw RootFindError(fmt::format("order {}: refinement did not converge in [{}, {}]", order, lo,
                                  hi),
                      lo, hi);
}

template <class Family>
BesselZeroTable zeros_by_interlacing(std::vector<double> seed, double x_max) {
  BesselZeroTable table;
  std::vector<double> current = std::move(seed);
  for (int order = 0;; ++order) {
    if (current.empty() || current.front() > x_max) break;
    if (current.back() <= x_max)
      throw RootFindError(fmt::format("order {}: seed zeros do not extend past {}", order, x_max),
                          current.front(), current.back());
    std::vector<double> below;
    for (double z : current)
      if (z <= x_max) below.push_back(z);
    table.push_back(std::move(below));

    std::vector<double> next;
    next.reserve(current.size());
    for (std::size_t i = 0; i + 1 < current.size(); ++i)
      next.push_back(refine<Family>(order + 1, current[i], current[i + 1]));
    current = std::move(next);
  }
  return table;
}

// Each order consumes one seed zero; the first zero of order v exceeds v, so
// at most ceil(x_max) + 1 orders reach below x_max.
std::size_t seed_count(double x_max) {
  return static_cast<std::size_t>(std::ceil(x_max / std::numbers::pi)) +
         static_cast<std::size_t>(std::ceil(x_max)) + 3;
}

}  // namespace

BesselZeroTable spherical_bessel_zeros(double x_max) {
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw DomainError("x_max must be positive");
  std::vector<double> seed;
  const std::size_t n = seed_count(x_max);
  for (std::size_t k = 1; k <= n; ++k) seed.push_back(std::numbers::pi * static_cast<double>(k));
  return zeros_by_interlacing<SphericalFamily>(std::move(seed), x_max);
}

BesselZeroTable cylindrical_bessel_zeros(double x_max) {
  if (!(x_max > 0.0) || !std::isfinite(x_max)) throw DomainError("x_max must be positive");
  // McMahon: j_{0,k} ~ (k - 1/4) pi, so ((k - 1/2) pi, k pi) holds exactly one zero.
  std::vector<double> seed;
  const std::size_t n = seed_count(x_max);
  for (std::size_t k = 1; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    seed.push_back(refine<CylindricalFamily>(0, (kk - 0.5) * std::numbers::pi,
                                             kk * std::numbers::pi));
  }
  return zeros_by_interlacing<CylindricalFamily>(std::move(seed), x_max);
}

}  // namespace weylkit
