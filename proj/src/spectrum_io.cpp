#include "weylkit/spectrum_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "weylkit/error.hpp"
#include "weylkit/table.hpp"

namespace weylkit {

std::string spectrum_to_json(const Spectrum& spectrum) {
  std::string out = fmt::format(
      "{{\n  \"dimension\": {},\n  \"shape_tag\": {},\n  \"truncation_bound\": {},\n  \"entries\": [",
      spectrum.dimension(), nlohmann::json(spectrum.shape_tag()).dump(),
      format_double(spectrum.truncation_bound()));
  const auto evs = spectrum.eigenvalues();
  const auto mult = spectrum.multiplicities();
  for (std::size_t i = 0; i < evs.size(); ++i)
    out += fmt::format("{}\n    [{}, {}]", i ? "," : "", format_double(evs[i]), mult[i]);
  out += evs.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

Spectrum spectrum_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(fmt::format("spectrum JSON does not parse: {}", e.what()));
  }
  try {
    std::vector<double> values;
    std::vector<std::uint64_t> mults;
    for (const auto& entry : j.at("entries")) {
      if (!entry.is_array() || entry.size() != 2)
        throw SchemaError("spectrum entries must be [lambda, multiplicity] pairs");
      values.push_back(entry[0].get<double>());
      mults.push_back(entry[1].get<std::uint64_t>());
    }
    return Spectrum(j.at("dimension").get<int>(), std::move(values), std::move(mults),
                    j.at("truncation_bound").get<double>(),
                    j.value("shape_tag", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(fmt::format("malformed spectrum JSON: {}", e.what()));
  }
}

void save_spectrum(const Spectrum& spectrum, const std::string& path) {
  write_text_file(path, spectrum_to_json(spectrum));
}

Spectrum load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open spectrum file {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return spectrum_from_json(buffer.str());
}

}  // namespace weylkit
