#include "weylkit/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>

#include <fmt/core.h>

#include "weylkit/bessel_zeros.hpp"
#include "weylkit/error.hpp"

namespace weylkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

std::string box_tag(const BoxShape& shape) {
  std::string tag = fmt::format("box D={} L=", shape.dimension());
  for (std::size_t i = 0; i < shape.sides.size(); ++i)
    tag += fmt::format("{}{:.17g}", i ? "," : "", shape.sides[i]);
  return tag;
}

// Visits every positive lattice point with sum (n_i / L_i)^2 <= budget,
// reporting the integer vector through `visit`.
void walk_lattice(const std::vector<double>& inv_sides_sq, std::size_t axis, double budget,
                  std::vector<std::int64_t>& n,
                  const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  const double step = inv_sides_sq[axis];
  const std::size_t last = inv_sides_sq.size() - 1;
  // The remaining axes need at least one quantum each.
  double reserve = 0.0;
  for (std::size_t j = axis + 1; j <= last; ++j) reserve += inv_sides_sq[j];
  for (std::int64_t k = 1;; ++k) {
    const double used = static_cast<double>(k * k) * step;
    if (used + reserve > budget) break;
    n[axis] = k;
    if (axis == last) {
      visit(n);
    } else {
      walk_lattice(inv_sides_sq, axis + 1, budget - used, n, visit);
    }
  }
}

}  // namespace

double BoxShape::volume() const noexcept {
  double v = 1.0;
  for (double l : sides) v *= l;
  return v;
}

void BoxShape::validate() const {
  if (sides.empty()) throw DomainError("box needs at least one side");
  for (double l : sides)
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("box sides must be positive");
}

Spectrum box_spectrum(const BoxShape& shape, double lambda_max) {
  shape.validate();
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw DomainError("truncation bound must be positive and finite");
  const int dim = shape.dimension();

  double first = 0.0;
  for (double l : shape.sides) first += kPi2 / (l * l);
  if (first > lambda_max)
    throw EmptySpectrumError(fmt::format(
        "truncation bound {} is below the lowest box eigenvalue {}", lambda_max, first));

  const bool cubic = std::all_of(shape.sides.begin(), shape.sides.end(),
                                 [&](double l) { return l == shape.sides.front(); });
  std::vector<double> inv_sq;
  for (double l : shape.sides) inv_sq.push_back(1.0 / (l * l));
  std::vector<std::int64_t> n(static_cast<std::size_t>(dim), 0);

  std::vector<double> values;
  std::vector<std::uint64_t> mults;

  if (cubic) {
    // Equal sides: sum n_i^2 is an exact integer key.
    const double l2 = shape.sides.front() * shape.sides.front();
    const auto key_max = static_cast<std::int64_t>(std::floor(lambda_max * l2 / kPi2)) + 1;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(key_max) + 1, 0);
    const std::vector<double> unit(static_cast<std::size_t>(dim), 1.0);
    walk_lattice(unit, 0, static_cast<double>(key_max), n, [&](const auto& v) {
      std::int64_t key = 0;
      for (auto x : v) key += x * x;
      ++counts[static_cast<std::size_t>(key)];
    });
    for (std::size_t key = 0; key < counts.size(); ++key) {
      if (counts[key] == 0) continue;
      const double ev = kPi2 * static_cast<double>(key) / l2;
      if (ev > lambda_max) continue;
      values.push_back(ev);
      mults.push_back(counts[key]);
    }
  } else {
    std::vector<double> raw;
    walk_lattice(inv_sq, 0, lambda_max / kPi2, n, [&](const auto& v) {
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        s += static_cast<double>(v[i] * v[i]) * inv_sq[i];
      const double ev = kPi2 * s;
      if (ev <= lambda_max) raw.push_back(ev);
    });
    std::sort(raw.begin(), raw.end());
    for (double ev : raw) {
      if (!values.empty() &&
          ev - values.back() <= kEigenvalueMergeTolerance * values.back()) {
        ++mults.back();
      } else {
        values.push_back(ev);
        mults.push_back(1);
      }
    }
  }
  return Spectrum(dim, std::move(values), std::move(mults), lambda_max, box_tag(shape));
}

HeatKernelCoefficients box_heat_coefficients(const BoxShape& shape, HalfIndex max_k) {
  shape.validate();
  if (max_k.twice() < 0) throw DomainError("max_k must be non-negative");
  const int dim = shape.dimension();

  // elementary[m] = e_m(L_1, ..., L_D); sum over v-subsets of V / prod L = e_{D-v}.
  std::vector<double> elementary(static_cast<std::size_t>(dim) + 1, 0.0);
  elementary[0] = 1.0;
  for (double l : shape.sides)
    for (std::size_t m = elementary.size() - 1; m >= 1; --m) elementary[m] += l * elementary[m - 1];

  std::vector<double> b(static_cast<std::size_t>(max_k.twice()) + 1, 0.0);
  for (int v = 0; v <= std::min(dim, max_k.twice()); ++v) {
    const double sign = (v % 2 == 0) ? 1.0 : -1.0;
    b[static_cast<std::size_t>(v)] =
        sign * std::pow(kPi, 0.5 * v) * elementary[static_cast<std::size_t>(dim - v)];
  }
  return HeatKernelCoefficients(dim, std::move(b));
}

WeylMajorant box_weyl_majorant(const BoxShape& shape) {
  shape.validate();
  const double half_d = 0.5 * shape.dimension();
  const double c0 = shape.volume() * std::pow(4.0 * kPi, -half_d) / std::tgamma(half_d + 1.0);
  return {shape.dimension(), half_d * c0, 0.0};
}

Spectrum ball3d_spectrum(const Ball3DShape& shape, double lambda_max) {
  if (!(shape.radius > 0.0)) throw DomainError("ball radius must be positive");
  if (shape.boundary != BoundaryCondition::Dirichlet)
    throw UnsupportedError("ball spectra are generated for Dirichlet walls only");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw DomainError("truncation bound must be positive and finite");
  const double r = shape.radius;
  if (lambda_max < kPi2 / (r * r))
    throw EmptySpectrumError(fmt::format(
        "truncation bound {} is below the lowest ball eigenvalue {}", lambda_max, kPi2 / (r * r)));

  const auto zeros = spherical_bessel_zeros(r * std::sqrt(lambda_max));
  std::vector<std::pair<double, std::uint64_t>> levels;
  for (std::size_t l = 0; l < zeros.size(); ++l)
    for (double x : zeros[l]) {
      const double ev = (x / r) * (x / r);
      if (ev <= lambda_max) levels.emplace_back(ev, 2 * l + 1);
    }
  std::sort(levels.begin(), levels.end());

  std::vector<double> values;
  std::vector<std::uint64_t> mults;
  for (const auto& [ev, m] : levels) {
    values.push_back(ev);
    mults.push_back(m);
  }
  return Spectrum(3, std::move(values), std::move(mults), lambda_max,
                  fmt::format("ball3d dirichlet R={:.17g}", r));
}

CountingSeries ball3d_counting_series(const Ball3DShape& shape) {
  if (!(shape.radius > 0.0)) throw DomainError("ball radius must be positive");
  if (shape.boundary != BoundaryCondition::Dirichlet)
    throw UnsupportedError("only the Dirichlet ball counting series is tabulated");
  const double r = shape.radius;
  const std::vector<PowerTerm> terms = {
      {HalfIndex::from_twice(0), 1.5, 2.0 / (9.0 * kPi) * r * r * r, TermKind::Convergent},
      {HalfIndex::from_twice(1), 1.0, -0.25 * r * r, TermKind::Convergent},
      {HalfIndex::from_twice(2), 0.5, 2.0 / (3.0 * kPi) * r, TermKind::Convergent},
      {HalfIndex::from_twice(3), 0.0, -1.0 / 48.0, TermKind::Convergent},
      {HalfIndex::from_twice(4), -0.5, -2.0 / (315.0 * kPi) / r, TermKind::Continued},
  };
  return CountingSeries(3, terms, {});
}

HeatKernelCoefficients ball3d_heat_coefficients(const Ball3DShape& shape) {
  const auto series = ball3d_counting_series(shape);
  const double scale = std::pow(4.0 * kPi, 1.5);
  std::vector<double> b;
  for (const auto& term : series.power_terms()) {
    const int twice_gamma_arg = 5 - term.k.twice();
    b.push_back(scale * term.coefficient / gamma_reciprocal_continued_half(twice_gamma_arg));
  }
  return HeatKernelCoefficients(3, std::move(b));
}

HeatKernelCoefficients ball_low_order_coefficients(int dimension, double radius,
                                                   BoundaryCondition boundary) {
  if (dimension < 1) throw DomainError("ball dimension must be >= 1");
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  const double half_d = 0.5 * dimension;
  const double volume = std::pow(kPi, half_d) * std::pow(radius, dimension) / std::tgamma(half_d + 1.0);
  const double area = dimension * volume / radius;
  const double sign = boundary == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
  return HeatKernelCoefficients(dimension, {volume, sign * 0.5 * std::sqrt(kPi) * area,
                                            (dimension - 1) / (3.0 * radius) * area});
}

WeylMajorant ball_weyl_majorant(int dimension, double radius) {
  const auto b = ball_low_order_coefficients(dimension, radius, BoundaryCondition::Dirichlet);
  const double half_d = 0.5 * dimension;
  const double c0 = b.at(HalfIndex::whole(0)) * std::pow(4.0 * kPi, -half_d) / std::tgamma(half_d + 1.0);
  return {dimension, half_d * c0, 0.0};
}

Spectrum disk_spectrum(double radius, double lambda_max) {
  if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw DomainError("truncation bound must be positive and finite");
  const auto zeros = cylindrical_bessel_zeros(radius * std::sqrt(lambda_max));
  std::vector<std::pair<double, std::uint64_t>> levels;
  for (std::size_t m = 0; m < zeros.size(); ++m)
    for (double x : zeros[m]) {
      const double ev = (x / radius) * (x / radius);
      if (ev <= lambda_max) levels.emplace_back(ev, m == 0 ? 1 : 2);
    }
  if (levels.empty())
    throw EmptySpectrumError(
        fmt::format("truncation bound {} is below the lowest disk eigenvalue", lambda_max));
  std::sort(levels.begin(), levels.end());
  std::vector<double> values;
  std::vector<std::uint64_t> mults;
  for (const auto& [ev, m] : levels) {
    values.push_back(ev);
    mults.push_back(m);
  }
  return Spectrum(2, std::move(values), std::move(mults), lambda_max,
                  fmt::format("disk dirichlet R={:.17g}", radius));
}

HeatKernelCoefficients disk_heat_coefficients(double radius) {
  if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
  return HeatKernelCoefficients(
      2, {kPi * radius * radius, -0.5 * std::sqrt(kPi) * 2.0 * kPi * radius, 2.0 * kPi / 3.0});
}

}  // namespace weylkit
