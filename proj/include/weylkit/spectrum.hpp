#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace weylkit {

/// Discrete Laplacian spectrum truncated at a bound Lambda. Every eigenvalue
/// <= Lambda is present and none above it is stored. Equal eigenvalues are
/// merged and carry an explicit multiplicity.
class Spectrum {
 public:
  Spectrum(int dimension, std::vector<double> eigenvalues,
           std::vector<std::uint64_t> multiplicities, double truncation_bound,
           std::string shape_tag);

  int dimension() const noexcept { return dimension_; }
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  std::span<const std::uint64_t> multiplicities() const noexcept { return multiplicities_; }
  double truncation_bound() const noexcept { return truncation_bound_; }
  const std::string& shape_tag() const noexcept { return shape_tag_; }

  std::size_t distinct_count() const noexcept { return eigenvalues_.size(); }
  bool empty() const noexcept { return eigenvalues_.empty(); }
  /// Sum of multiplicities, i.e. N(Lambda+).
  std::uint64_t total_count() const noexcept {
    return cumulative_.empty() ? 0 : cumulative_.back();
  }
  /// Number of states (with multiplicity) among the first `i` distinct levels.
  std::uint64_t cumulative_before(std::size_t i) const noexcept {
    return i == 0 ? 0 : cumulative_[i - 1];
  }

  /// The n-th eigenvalue counted with multiplicity, n >= 1.
  double nth_eigenvalue(std::uint64_t n) const;
  /// Median of the eigenvalue list counted with multiplicity.
  double median_eigenvalue() const;

 private:
  int dimension_;
  std::vector<double> eigenvalues_;
  std::vector<std::uint64_t> multiplicities_;
  std::vector<std::uint64_t> cumulative_;
  double truncation_bound_;
  std::string shape_tag_;
};

/// Fermi smoothing parameters. `tail_cutoff` c drops every term with
/// beta*(lambda_n - lambda) > c, each of which is below e^{-c}.
struct SmoothingConfig {
  std::vector<double> beta_schedule;
  double tail_cutoff = 30.0;
  double tolerance = 1e-10;

  /// beta in {2^6, ..., 2^20} / (median eigenvalue).
  static SmoothingConfig geometric(const Spectrum& spectrum);
  void validate() const;
};

/// Counting-function majorant used to certify the heat-trace tail:
/// rho(lambda) = A*lambda^{D/2-1} + B*lambda^{D/2-3/2}, and
/// M(lambda) = integral of rho over (0, lambda) must bound N(lambda) from
/// above for every lambda beyond the truncation bound.
struct WeylMajorant {
  int dimension = 1;
  double a = 0.0;
  double b = 0.0;

  double counting(double lambda) const;
  /// Closed form of integral_{lambda}^{inf} rho(mu) e^{-mu t} d mu.
  double laplace_tail(double lambda, double t) const;
};

std::uint64_t count_direct(const Spectrum& spectrum, double lambda);

/// Single-beta Fermi sum sum_n mult / (e^{beta(lambda_n - lambda)} + 1).
/// Throws TruncationError when lambda + cutoff/beta exceeds Lambda.
double fermi_count(const Spectrum& spectrum, double lambda, double beta,
                   double tail_cutoff = 30.0);

struct SmoothedCount {
  double value;
  double beta;      // schedule entry at which the value was accepted
  double previous;  // value at the preceding certified entry
  std::size_t evaluations;
};

/// Fermi-smoothed count evaluated along the beta schedule until two
/// consecutive certified values agree within cfg.tolerance. Schedule entries
/// whose dropped tail cannot be certified from Lambda are skipped.
SmoothedCount count_smoothed(const Spectrum& spectrum, double lambda,
                             const SmoothingConfig& cfg);

struct HeatTrace {
  double value;
  double tail_bound;  // +inf when no majorant was supplied
};

HeatTrace heat_trace(const Spectrum& spectrum, double t);
HeatTrace heat_trace(const Spectrum& spectrum, double t, const WeylMajorant& majorant);

struct LaplaceCheck {
  double integral;    // t * int_0^Lambda N(lambda) e^{-lambda t} d lambda
  double trace_side;  // truncated trace minus N(Lambda+) e^{-Lambda t}
  double residual;    // relative difference
};

/// Integrates the step function N against e^{-lambda t} interval by interval
/// and compares with the truncated heat trace.
LaplaceCheck laplace_forward_check(const Spectrum& spectrum, double t);

/// Fermi-mollified state density sum_n mult * beta e^x / (e^x + 1)^2 with
/// x = beta(lambda_n - lambda). Its kernel has unit mass and width ~1/beta;
/// the beta -> inf limit is a sum of delta functions.
double density_smoothed(const Spectrum& spectrum, double lambda, double beta,
                        double tail_cutoff = 30.0);

}  // namespace weylkit
