#include "weylkit/table.hpp"

#include <cmath>
#include <fstream>

#include <fmt/core.h>
#include <json.hpp>

#include "weylkit/error.hpp"

namespace weylkit {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string render_cell(const Cell& cell, TableFormat format) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (format == TableFormat::Json && !std::isfinite(*d)) return "null";
    return format_double(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return fmt::format("{}", *i);
  const auto& s = std::get<std::string>(cell);
  return format == TableFormat::Csv ? csv_field(s) : json_string(s);
}

void check_schema(const Table& table) {
  if (table.rows.empty()) return;
  const Row& first = table.rows.front();
  for (std::size_t r = 1; r < table.rows.size(); ++r) {
    const Row& row = table.rows[r];
    if (row.size() != first.size())
      throw SchemaError(fmt::format("row {} has {} columns, expected {}", r, row.size(),
                                    first.size()));
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c].first != first[c].first)
        throw SchemaError(fmt::format("row {} column {} is '{}', expected '{}'", r, c,
                                      row[c].first, first[c].first));
      if (row[c].second.index() != first[c].second.index())
        throw SchemaError(fmt::format("row {} column '{}' changes type", r, row[c].first));
    }
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

std::string render_table(const Table& table, TableFormat format) {
  check_schema(table);
  std::string out;
  if (format == TableFormat::Csv) {
    for (const auto& [key, value] : table.provenance) out += fmt::format("# {}: {}\n", key, value);
    if (table.rows.empty()) return out;
    const Row& first = table.rows.front();
    for (std::size_t c = 0; c < first.size(); ++c)
      out += (c ? "," : "") + csv_field(first[c].first);
    out += '\n';
    for (const Row& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out += (c ? "," : "") + render_cell(row[c].second, format);
      out += '\n';
    }
    return out;
  }

  out += "{\n  \"provenance\": {";
  for (std::size_t i = 0; i < table.provenance.size(); ++i)
    out += fmt::format("{}\n    {}: {}", i ? "," : "", json_string(table.provenance[i].first),
                       json_string(table.provenance[i].second));
  out += table.provenance.empty() ? "},\n" : "\n  },\n";
  out += "  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += r ? ",\n    {" : "\n    {";
    const Row& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c)
      out += fmt::format("{}{}: {}", c ? ", " : "", json_string(row[c].first),
                         render_cell(row[c].second, format));
    out += "}";
  }
  out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open {} for writing", path));
  out << text;
  out.flush();
  if (!out) throw IoError(fmt::format("failed writing {}", path));
}

void emit_table(const Table& table, TableFormat format, const std::string& path) {
  write_text_file(path, render_table(table, format));
}

}  // namespace weylkit
