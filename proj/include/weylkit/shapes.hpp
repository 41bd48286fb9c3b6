#pragma once

#include <vector>

#include "weylkit/heat_coefficients.hpp"
#include "weylkit/spectrum.hpp"
#include "weylkit/weyl_transform.hpp"

namespace weylkit {

/// Rectangular D-dimensional box with Dirichlet walls.
struct BoxShape {
  std::vector<double> sides;

  int dimension() const noexcept { return static_cast<int>(sides.size()); }
  double volume() const noexcept;
  void validate() const;
};

enum class BoundaryCondition { Dirichlet, NeumannOrRobin };

struct Ball3DShape {
  double radius = 1.0;
  BoundaryCondition boundary = BoundaryCondition::Dirichlet;
};

/// Relative tolerance under which box eigenvalues with unequal sides merge.
inline constexpr double kEigenvalueMergeTolerance = 1e-9;

/// All lambda = pi^2 sum n_i^2 / L_i^2 <= Lambda with n_i >= 1.
Spectrum box_spectrum(const BoxShape& shape, double lambda_max);

/// B_{v/2} = (-1)^v pi^{v/2} sum_{i_1<...<i_v} V / (L_{i_1}...L_{i_v}) for
/// v = 0..D, zero beyond. Returns orders 0, 1/2, ..., max_k.
HeatKernelCoefficients box_heat_coefficients(const BoxShape& shape, HalfIndex max_k);

/// Weyl volume term C_0 lambda^{D/2} as a counting majorant. Each positive
/// lattice point owns a unit cell inside the ellipsoid orthant, so this
/// bounds the Dirichlet box count from above for every lambda.
WeylMajorant box_weyl_majorant(const BoxShape& shape);

/// Dirichlet ball: lambda = (x_{l,k}/R)^2 with multiplicity 2l+1, where
/// x_{l,k} are the positive zeros of j_l.
Spectrum ball3d_spectrum(const Ball3DShape& shape, double lambda_max);

/// The five-term Dirichlet counting series
/// (2/(9pi))R^3 l^{3/2} - (1/4)R^2 l + (2/(3pi))R l^{1/2} - 1/48 - (2/(315pi))R^{-1} l^{-1/2}.
CountingSeries ball3d_counting_series(const Ball3DShape& shape);

/// B_0..B_2 of the Dirichlet ball, obtained by inverting the counting
/// coefficients above through C_k = (4pi)^{-3/2} B_k / Gamma(5/2 - k).
HeatKernelCoefficients ball3d_heat_coefficients(const Ball3DShape& shape);

/// Geometric low orders B_0, B_{1/2}, B_1 of a D-ball of radius R:
/// volume, -/+ (sqrt(pi)/2) * area, and (1/3) * integrated mean curvature
/// (D-1)/R * area. The sign of B_{1/2} is negative for Dirichlet.
HeatKernelCoefficients ball_low_order_coefficients(int dimension, double radius,
                                                   BoundaryCondition boundary);

/// Weyl volume term of the Dirichlet ball as a counting majorant (Polya's
/// inequality, which holds for balls).
WeylMajorant ball_weyl_majorant(int dimension, double radius);

/// Dirichlet disk: lambda = (j_{m,k}/R)^2, multiplicity 1 for m = 0 and 2
/// otherwise.
Spectrum disk_spectrum(double radius, double lambda_max);

/// Smooth-boundary planar coefficients for the disk: S = pi R^2, L = 2 pi R, r = 0.
HeatKernelCoefficients disk_heat_coefficients(double radius);

}  // namespace weylkit
