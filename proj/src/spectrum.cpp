#include "weylkit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/core.h>

#include "weylkit/error.hpp"
#include "weylkit/summation.hpp"

namespace weylkit {

Spectrum::Spectrum(int dimension, std::vector<double> eigenvalues,
                   std::vector<std::uint64_t> multiplicities, double truncation_bound,
                   std::string shape_tag)
    : dimension_(dimension),
      eigenvalues_(std::move(eigenvalues)),
      multiplicities_(std::move(multiplicities)),
      truncation_bound_(truncation_bound),
      shape_tag_(std::move(shape_tag)) {
  if (dimension_ < 1) throw InvariantError("spectrum dimension must be >= 1");
  if (eigenvalues_.size() != multiplicities_.size())
    throw InvariantError("eigenvalue and multiplicity lists differ in length");
  if (!(truncation_bound_ > 0.0) || !std::isfinite(truncation_bound_))
    throw InvariantError("truncation bound must be positive and finite");

  cumulative_.reserve(eigenvalues_.size());
  std::uint64_t running = 0;
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    const double ev = eigenvalues_[i];
    if (!(ev > 0.0) || !std::isfinite(ev))
      throw InvariantError(fmt::format("eigenvalue #{} is not strictly positive", i));
    if (i > 0 && ev <= eigenvalues_[i - 1])
      throw InvariantError(fmt::format("eigenvalues not strictly increasing at #{}", i));
    if (ev > truncation_bound_)
      throw InvariantError(fmt::format("eigenvalue {} exceeds truncation bound {}", ev,
                                       truncation_bound_));
    if (multiplicities_[i] == 0)
      throw InvariantError(fmt::format("multiplicity #{} is zero", i));
    running += multiplicities_[i];
    cumulative_.push_back(running);
  }
}

double Spectrum::nth_eigenvalue(std::uint64_t n) const {
  if (n == 0 || n > total_count())
    throw TruncationError(fmt::format("eigenvalue index {} outside stored range 1..{}", n,
                                      total_count()),
                          static_cast<double>(n), static_cast<double>(total_count()));
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), n);
  return eigenvalues_[static_cast<std::size_t>(it - cumulative_.begin())];
}

double Spectrum::median_eigenvalue() const {
  if (empty()) throw EmptySpectrumError("median of an empty spectrum");
  return nth_eigenvalue((total_count() + 1) / 2);
}

SmoothingConfig SmoothingConfig::geometric(const Spectrum& spectrum) {
  const double scale = spectrum.median_eigenvalue();
  SmoothingConfig cfg;
  for (int p = 6; p <= 20; ++p) cfg.beta_schedule.push_back(std::ldexp(1.0, p) / scale);
  return cfg;
}

void SmoothingConfig::validate() const {
  if (beta_schedule.empty()) throw DomainError("beta schedule is empty");
  for (std::size_t i = 0; i < beta_schedule.size(); ++i) {
    if (!(beta_schedule[i] > 0.0) || !std::isfinite(beta_schedule[i]))
      throw DomainError("beta schedule entries must be positive and finite");
    if (i > 0 && !(beta_schedule[i] > beta_schedule[i - 1]))
      throw DomainError("beta schedule must be strictly increasing");
  }
  if (!(tail_cutoff > 0.0)) throw DomainError("tail cutoff must be positive");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
}

double WeylMajorant::counting(double lambda) const {
  if (lambda <= 0.0) return 0.0;
  const double half_d = 0.5 * dimension;
  double m = a * std::pow(lambda, half_d) / half_d;
  if (b != 0.0) {
    if (dimension < 2) throw InvariantError("majorant B term needs dimension >= 2");
    const double s = 0.5 * (dimension - 1);
    m += b * std::pow(lambda, s) / s;
  }
  return m;
}

double WeylMajorant::laplace_tail(double lambda, double t) const {
  // int_L^inf mu^{s-1} e^{-mu t} d mu = t^{-s} Gamma(s, L t)
  auto piece = [&](double coeff, double s) {
    if (coeff == 0.0) return 0.0;
    return coeff * std::pow(t, -s) * boost::math::tgamma(s, lambda * t);
  };
  double tail = piece(a, 0.5 * dimension);
  if (b != 0.0) {
    if (dimension < 2) throw InvariantError("majorant B term needs dimension >= 2");
    tail += piece(b, 0.5 * (dimension - 1));
  }
  return tail;
}

std::uint64_t count_direct(const Spectrum& spectrum, double lambda) {
  if (lambda > spectrum.truncation_bound())
    throw TruncationError(fmt::format("count at {} exceeds truncation bound {}", lambda,
                                      spectrum.truncation_bound()),
                          lambda, spectrum.truncation_bound());
  const auto evs = spectrum.eigenvalues();
  const auto idx = static_cast<std::size_t>(std::lower_bound(evs.begin(), evs.end(), lambda) -
                                            evs.begin());
  return spectrum.cumulative_before(idx);
}

namespace {

void require_certified(const Spectrum& spectrum, double lambda, double beta, double cutoff) {
  const double reach = lambda + cutoff / beta;
  if (reach > spectrum.truncation_bound())
    throw TruncationError(
        fmt::format("smoothing window up to {} exceeds truncation bound {}", reach,
                    spectrum.truncation_bound()),
        reach, spectrum.truncation_bound());
}

double fermi_sum(const Spectrum& spectrum, double lambda, double beta, double cutoff) {
  const auto evs = spectrum.eigenvalues();
  const auto mult = spectrum.multiplicities();
  const double reach = lambda + cutoff / beta;
  const auto end = static_cast<std::size_t>(std::upper_bound(evs.begin(), evs.end(), reach) -
                                            evs.begin());
  return ordered_sum(0, end, [&](std::size_t i) {
    const double x = beta * (evs[i] - lambda);
    return static_cast<double>(mult[i]) / (std::exp(x) + 1.0);
  });
}

}  // namespace

double fermi_count(const Spectrum& spectrum, double lambda, double beta, double tail_cutoff) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  require_certified(spectrum, lambda, beta, tail_cutoff);
  return fermi_sum(spectrum, lambda, beta, tail_cutoff);
}

SmoothedCount count_smoothed(const Spectrum& spectrum, double lambda, const SmoothingConfig& cfg) {
  cfg.validate();
  if (!(lambda > 0.0)) throw DomainError("smoothed count needs lambda > 0");
  if (lambda > spectrum.truncation_bound())
    throw TruncationError("smoothed count beyond truncation bound", lambda,
                          spectrum.truncation_bound());

  // Exactly at a level the Fermi factor is 1/2 for every beta.
  const auto evs = spectrum.eigenvalues();
  const auto pos = static_cast<std::size_t>(std::lower_bound(evs.begin(), evs.end(), lambda) -
                                            evs.begin());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t j : {pos, pos - 1}) {
    if (j >= evs.size()) continue;
    if (std::abs(evs[j] - lambda) <= 4.0 * eps * std::max(evs[j], lambda)) {
      const auto below = static_cast<double>(spectrum.cumulative_before(j));
      const auto m = static_cast<double>(spectrum.multiplicities()[j]);
      throw DegeneratePointError(
          fmt::format("lambda = {} coincides with an eigenvalue of multiplicity {}; "
                      "step count {}, Fermi limit {}",
                      lambda, m, below, below + 0.5 * m),
          below, below + 0.5 * m);
    }
  }

  double previous = std::numeric_limits<double>::quiet_NaN();
  double last = previous;
  std::size_t evaluations = 0;
  for (double beta : cfg.beta_schedule) {
    if (lambda + cfg.tail_cutoff / beta > spectrum.truncation_bound()) continue;
    previous = last;
    last = fermi_sum(spectrum, lambda, beta, cfg.tail_cutoff);
    ++evaluations;
    if (evaluations > 1 && std::abs(last - previous) <= cfg.tolerance)
      return {last, beta, previous, evaluations};
  }
  if (evaluations == 0)
    throw TruncationError("no schedule entry has a certifiable tail at this lambda",
                          lambda + cfg.tail_cutoff / cfg.beta_schedule.back(),
                          spectrum.truncation_bound());
  throw NonConvergenceError(
      fmt::format("beta schedule exhausted after {} evaluations; last two values {} and {}",
                  evaluations, previous, last),
      previous, last);
}

HeatTrace heat_trace(const Spectrum& spectrum, double t) {
  if (!(t > 0.0)) throw DomainError("heat trace needs t > 0");
  const auto evs = spectrum.eigenvalues();
  const auto mult = spectrum.multiplicities();
  const double value = ordered_sum(0, evs.size(), [&](std::size_t i) {
    return static_cast<double>(mult[i]) * std::exp(-evs[i] * t);
  });
  return {value, std::numeric_limits<double>::infinity()};
}

HeatTrace heat_trace(const Spectrum& spectrum, double t, const WeylMajorant& majorant) {
  HeatTrace out = heat_trace(spectrum, t);
  const double bound = spectrum.truncation_bound();
  // tail = t int_L^inf (N - N(L+)) e^{-lambda t} <= (M(L) - N(L+)) e^{-L t} + int_L^inf rho e^{-lambda t}
  const double excess = majorant.counting(bound) - static_cast<double>(spectrum.total_count());
  if (excess < -1e-9 * std::max(1.0, static_cast<double>(spectrum.total_count())))
    throw InvariantError(fmt::format("majorant M(Lambda) = {} is below the stored count {}",
                                     majorant.counting(bound), spectrum.total_count()));
  out.tail_bound = std::max(0.0, excess) * std::exp(-bound * t) + majorant.laplace_tail(bound, t);
  return out;
}

LaplaceCheck laplace_forward_check(const Spectrum& spectrum, double t) {
  if (!(t > 0.0)) throw DomainError("Laplace check needs t > 0");
  const auto evs = spectrum.eigenvalues();
  const double bound = spectrum.truncation_bound();
  const std::size_t n = evs.size();

  // On [lambda_i, lambda_{i+1}) the step function equals the cumulative count
  // through level i; the last interval closes at Lambda.
  const double integral = ordered_sum(0, n, [&](std::size_t i) {
    const double lo = evs[i];
    const double hi = (i + 1 < n) ? evs[i + 1] : bound;
    const auto count = static_cast<double>(spectrum.cumulative_before(i + 1));
    return count * std::exp(-lo * t) * -std::expm1(-(hi - lo) * t);
  });

  const double trace = heat_trace(spectrum, t).value;
  const double trace_side =
      trace - static_cast<double>(spectrum.total_count()) * std::exp(-bound * t);

  const double scale = std::max(std::abs(integral), std::abs(trace_side));
  const double residual = scale == 0.0 ? 0.0 : std::abs(integral - trace_side) / scale;
  return {integral, trace_side, residual};
}

double density_smoothed(const Spectrum& spectrum, double lambda, double beta,
                        double tail_cutoff) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
  require_certified(spectrum, lambda, beta, tail_cutoff);
  const auto evs = spectrum.eigenvalues();
  const auto mult = spectrum.multiplicities();
  const double half_width = tail_cutoff / beta;
  const auto begin = static_cast<std::size_t>(
      std::lower_bound(evs.begin(), evs.end(), lambda - half_width) - evs.begin());
  const auto end = static_cast<std::size_t>(
      std::upper_bound(evs.begin(), evs.end(), lambda + half_width) - evs.begin());
  return ordered_sum(begin, end, [&](std::size_t i) {
    // beta e^x / (e^x + 1)^2 == beta / (4 cosh^2(x/2))
    const double c = std::cosh(0.5 * beta * (evs[i] - lambda));
    return static_cast<double>(mult[i]) * beta / (4.0 * c * c);
  });
}

}  // namespace weylkit
