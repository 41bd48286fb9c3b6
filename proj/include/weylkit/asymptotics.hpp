#pragma once

#include <array>
#include <cstdint>

#include "weylkit/heat_coefficients.hpp"
#include "weylkit/shapes.hpp"
#include "weylkit/weyl_transform.hpp"

namespace weylkit {

/// lambda_n ~ alpha_0 n^{2/D} + alpha_1 n^{1/D} + alpha_2. Higher orders
/// are not produced.
struct SpectrumAsymptotics {
  int dimension;
  std::array<double, 3> alpha;
};

/// Root of N(lambda) = n for the truncated counting series. This is the
/// mean-level eigenvalue: the staircase's number-theoretic fluctuations are
/// outside the reach of any finite series. When the series is not monotone
/// at small lambda the largest root is returned.
double eigenvalue_solve(const CountingSeries& cs, std::uint64_t n);

/// alpha_0 = 4 pi Gamma(D/2+1)^{2/D} B_0^{-2/D}
/// alpha_1 = -4 sqrt(pi) Gamma(D/2+1)^{1+1/D} / (D Gamma(D/2+1/2)) B_{1/2} / B_0^{1+1/D}
/// alpha_2 = D Gamma(D/2)^2 / (4 Gamma(D/2+1/2)^2) (B_{1/2}/B_0)^2 - B_1/B_0
SpectrumAsymptotics expansion_coefficients(const HeatKernelCoefficients& hk);

double evaluate_expansion(const SpectrumAsymptotics& sa, std::uint64_t n);

/// Tabulated closed-form ball spectra for D = 3, 4, 5, stored verbatim. The
/// sign of alpha_1 is + for Dirichlet and - for Neumann/Robin walls. The
/// tabulated 4-ball constant -26/9 disagrees with expansion_coefficients on
/// the geometric ball coefficients, which gives +28/9.
SpectrumAsymptotics tabulated_ball_expansion(int dimension, double radius,
                                             BoundaryCondition boundary);

}  // namespace weylkit
