#include "weylkit/series_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "weylkit/error.hpp"
#include "weylkit/table.hpp"

namespace weylkit {

namespace {

nlohmann::json parse(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(fmt::format("{} JSON does not parse: {}", what, e.what()));
  }
}

const char* kind_name(TermKind kind) {
  return kind == TermKind::Convergent ? "convergent" : "continued";
}

TermKind kind_from(const std::string& s) {
  if (s == "convergent") return TermKind::Convergent;
  if (s == "continued") return TermKind::Continued;
  throw SchemaError(fmt::format("unknown power-term kind '{}'", s));
}

}  // namespace

std::string coefficients_to_json(const HeatKernelCoefficients& hk) {
  std::string out = fmt::format("{{\n  \"dimension\": {},\n  \"coefficients\": {{", hk.dimension());
  const auto b = hk.by_twice_k();
  for (std::size_t j = 0; j < b.size(); ++j)
    out += fmt::format("{}\n    \"{}\": {}", j ? "," : "", j, format_double(b[j]));
  out += "\n  }\n}\n";
  return out;
}

HeatKernelCoefficients coefficients_from_json(const std::string& text) {
  const nlohmann::json j = parse(text, "coefficient");
  try {
    std::map<int, double> by_key;
    for (const auto& [key, value] : j.at("coefficients").items()) {
      std::size_t used = 0;
      int twice = -1;
      try {
        twice = std::stoi(key, &used);
      } catch (const std::exception&) {
      }
      if (twice < 0 || used != key.size())
        throw SchemaError(fmt::format("coefficient key '{}' is not a non-negative integer 2k", key));
      by_key[twice] = value.get<double>();
    }
    if (by_key.empty()) throw SchemaError("coefficient map is empty");
    std::vector<double> b(static_cast<std::size_t>(by_key.rbegin()->first) + 1, 0.0);
    for (const auto& [twice, value] : by_key) b[static_cast<std::size_t>(twice)] = value;
    return HeatKernelCoefficients(j.at("dimension").get<int>(), std::move(b));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(fmt::format("malformed coefficient JSON: {}", e.what()));
  }
}

HeatKernelCoefficients load_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open coefficient file {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return coefficients_from_json(buffer.str());
}

std::string counting_series_to_json(const CountingSeries& cs) {
  std::string out = fmt::format("{{\n  \"dimension\": {},\n  \"power_terms\": [", cs.dimension());
  const auto& power = cs.power_terms();
  for (std::size_t i = 0; i < power.size(); ++i)
    out += fmt::format(
        "{}\n    {{\"k2\": {}, \"exponent\": {}, \"coefficient\": {}, \"kind\": \"{}\"}}",
        i ? "," : "", power[i].k.twice(), format_double(power[i].exponent),
        format_double(power[i].coefficient), kind_name(power[i].kind));
  out += power.empty() ? "],\n  \"delta_terms\": [" : "\n  ],\n  \"delta_terms\": [";
  const auto& delta = cs.delta_terms();
  for (std::size_t i = 0; i < delta.size(); ++i)
    out += fmt::format("{}\n    {{\"k2\": {}, \"order\": {}, \"weight\": {}}}", i ? "," : "",
                       delta[i].k.twice(), delta[i].order, format_double(delta[i].weight));
  out += delta.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

CountingSeries counting_series_from_json(const std::string& text) {
  const nlohmann::json j = parse(text, "counting series");
  try {
    std::vector<PowerTerm> power;
    for (const auto& t : j.at("power_terms"))
      power.push_back({HalfIndex::from_twice(t.at("k2").get<int>()), t.at("exponent").get<double>(),
                       t.at("coefficient").get<double>(),
                       kind_from(t.at("kind").get<std::string>())});
    std::vector<DeltaTerm> delta;
    for (const auto& t : j.at("delta_terms"))
      delta.push_back({t.at("order").get<int>(), t.at("weight").get<double>(),
                       HalfIndex::from_twice(t.at("k2").get<int>())});
    return CountingSeries(j.at("dimension").get<int>(), std::move(power), std::move(delta));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(fmt::format("malformed counting-series JSON: {}", e.what()));
  }
}

}  // namespace weylkit
