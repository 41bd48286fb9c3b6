#pragma once

#include <array>
#include <string>
#include <vector>

#include "weylkit/heat_coefficients.hpp"

namespace weylkit {

using Point2 = std::array<double, 2>;
/// Closed polyline; the closing segment back to the first point is implicit.
using Polyline = std::vector<Point2>;

/// Flat multiply-connected region: a counterclockwise outer boundary with r
/// clockwise holes. Area and perimeter are derived from the samples.
class PlanarRegion {
 public:
  /// Orientation is normalized (outer counterclockwise, holes clockwise).
  /// Throws InvalidRegionError for self-intersecting or overlapping curves,
  /// holes outside the outer curve, or degenerate samples.
  PlanarRegion(Polyline outer, std::vector<Polyline> holes);

  const Polyline& outer() const noexcept { return outer_; }
  const std::vector<Polyline>& holes() const noexcept { return holes_; }
  double area() const noexcept { return area_; }
  double perimeter() const noexcept { return perimeter_; }
  int hole_count() const noexcept { return static_cast<int>(holes_.size()); }
  int euler_characteristic() const noexcept { return 1 - hole_count(); }

 private:
  Polyline outer_;
  std::vector<Polyline> holes_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
};

/// Signed shoelace area (positive for counterclockwise).
double signed_area(const Polyline& curve);
double polyline_length(const Polyline& curve);

struct CurvatureIntegral {
  double total;           // sum of signed turning angles over all curves
  double error_estimate;  // turning-angle vs. Menger-curvature discrepancy
};

/// Integrated signed curvature of every boundary curve by discrete turning
/// angles. Throws ResolutionError when the estimate exceeds 1e-6 * 2 pi or a
/// single vertex turns by more than pi/4.
CurvatureIntegral boundary_curvature(const PlanarRegion& region);

/// integral of k ds over the boundary minus 2 pi (1 - r); vanishes for a
/// valid region.
double gauss_bonnet_defect(const PlanarRegion& region);

inline constexpr double kGaussBonnetTolerance = 1e-6 * 2.0 * 3.14159265358979323846;

/// B_0 = S, B_{1/2} = -(sqrt(pi)/2) L, B_1 = (2 pi / 3)(1 - r), so that
/// K(t) = S/(4 pi t) - L/(8 sqrt(pi t)) + (1 - r)/6.
HeatKernelCoefficients planar_heat_coefficients(const PlanarRegion& region);

/// JSON {"outer": [[x,y],...], "holes": [[[x,y],...],...]}.
PlanarRegion planar_region_from_json(const std::string& text);
PlanarRegion load_planar_region(const std::string& path);

}  // namespace weylkit
