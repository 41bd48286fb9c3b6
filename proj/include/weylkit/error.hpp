#pragma once

#include <stdexcept>
#include <string>

namespace weylkit {

/// Base of every failure raised by the toolkit. `kind()` is a stable,
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Invalid argument outside an operation's domain (t <= 0, lambda <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// A query needs eigenvalues beyond the stored truncation bound.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double requested, double bound)
      : Error(what), requested_(requested), bound_(bound) {}
  const char* kind() const noexcept override { return "truncation"; }
  double requested() const noexcept { return requested_; }
  double bound() const noexcept { return bound_; }

 private:
  double requested_;
  double bound_;
};

class EmptySpectrumError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "empty_spectrum"; }
};

/// Input violates a type invariant (unsorted spectrum, B0 <= 0, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invariant"; }
};

/// The smoothing schedule ran out before two consecutive values agreed.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double previous, double last)
      : Error(what), previous_(previous), last_(last) {}
  const char* kind() const noexcept override { return "non_convergence"; }
  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

/// The smoothed count was requested exactly at an eigenvalue. The Fermi
/// limit there is count + multiplicity/2, which differs from the strict
/// step definition; both are reported.
class DegeneratePointError : public Error {
 public:
  DegeneratePointError(const std::string& what, double step_count, double fermi_limit)
      : Error(what), step_count_(step_count), fermi_limit_(fermi_limit) {}
  const char* kind() const noexcept override { return "degenerate_point"; }
  double step_count() const noexcept { return step_count_; }
  double fermi_limit() const noexcept { return fermi_limit_; }

 private:
  double step_count_;
  double fermi_limit_;
};

/// Root bracketing or refinement failed.
class RootFindError : public Error {
 public:
  RootFindError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  const char* kind() const noexcept override { return "root_find"; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Boundary sampling too coarse for the curvature quadrature.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  const char* kind() const noexcept override { return "resolution"; }
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class InvalidRegionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_region"; }
};

/// Requested data the toolkit does not carry (e.g. Neumann ball series).
class UnsupportedError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported"; }
};

class InsufficientCoefficientsError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "insufficient_coefficients"; }
};

class SchemaError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "schema"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

class UsageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "usage"; }
};

}  // namespace weylkit
