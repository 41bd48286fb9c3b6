#pragma once

#include <string>

#include "weylkit/spectrum.hpp"

namespace weylkit {

/// {"dimension": D, "shape_tag": "...", "truncation_bound": L,
///  "entries": [[lambda, multiplicity], ...]}, floats at 17 significant digits.
std::string spectrum_to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const std::string& text);

void save_spectrum(const Spectrum& spectrum, const std::string& path);
Spectrum load_spectrum(const std::string& path);

}  // namespace weylkit
