#pragma once

#include <vector>

namespace weylkit {

/// zeros[order][i] is the (i+1)-th positive zero of the order-th function.
/// Every zero below x_max is present for every order that has one.
using BesselZeroTable = std::vector<std::vector<double>>;

/// Zeros of the spherical Bessel functions j_l, l = 0, 1, ...
BesselZeroTable spherical_bessel_zeros(double x_max);

/// Zeros of the cylindrical Bessel functions J_m, m = 0, 1, ...
BesselZeroTable cylindrical_bessel_zeros(double x_max);

}  // namespace weylkit
