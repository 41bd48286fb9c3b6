#pragma once

#include <string>

#include "weylkit/heat_coefficients.hpp"
#include "weylkit/weyl_transform.hpp"

namespace weylkit {

/// {"dimension": D, "coefficients": {"0": B_0, "1": B_{1/2}, "2": B_1, ...}},
/// keyed by 2k. Missing keys below the largest one read as zero.
std::string coefficients_to_json(const HeatKernelCoefficients& hk);
HeatKernelCoefficients coefficients_from_json(const std::string& text);
HeatKernelCoefficients load_coefficients(const std::string& path);

/// {"dimension": D,
///  "power_terms": [{"k2": 2k, "exponent": e, "coefficient": C, "kind": "convergent"}, ...],
///  "delta_terms": [{"k2": 2k, "order": l, "weight": w}, ...]}
std::string counting_series_to_json(const CountingSeries& cs);
CountingSeries counting_series_from_json(const std::string& text);

}  // namespace weylkit
