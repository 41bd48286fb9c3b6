#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace weylkit {

using Cell = std::variant<double, std::int64_t, std::string>;
/// Ordered (column, value) pairs. Every row of a table has the same columns.
using Row = std::vector<std::pair<std::string, Cell>>;

struct Table {
  /// Emitted ahead of the rows: "# key: value" lines in CSV, a "provenance"
  /// object in JSON.
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<Row> rows;
};

enum class TableFormat { Csv, Json };

/// %.17g rendering (round-trips any double); "inf"/"-inf"/"nan" for
/// non-finite values.
std::string format_double(double x);

/// Renders the table. CSV floats use 17 significant digits; JSON output is
/// {"provenance": {...}, "rows": [{...}, ...]}. Throws SchemaError when rows
/// disagree on their columns.
std::string render_table(const Table& table, TableFormat format);

/// render_table written to `path`; throws IoError if the file cannot be written.
void emit_table(const Table& table, TableFormat format, const std::string& path);

/// Writes text to a file, replacing it.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace weylkit
