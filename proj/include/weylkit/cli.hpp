#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weylkit/shapes.hpp"
#include "weylkit/table.hpp"

namespace weylkit {

inline constexpr const char* kToolVersion = "weylkit 1.0.0";

enum class Command { Spectrum, Count, Heat, Coeffs, Transform, Solve, Density, Verify };

/// start:stop:count, linear or geometric spacing.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
  bool log = false;

  static Grid parse(const std::string& text);
  std::vector<double> points() const;
  std::string to_string() const;
};

enum class ShapeKind { Box, Ball3D, Disk, Region };

struct ShapeSpec {
  ShapeKind kind = ShapeKind::Box;
  std::vector<double> sides;  // box
  double radius = 1.0;        // ball3d, disk
  BoundaryCondition boundary = BoundaryCondition::Dirichlet;
  std::string region_path;     // region
  nlohmann::json region_inline;  // region given inline instead of a file

  /// {"kind": "box", "L": [..]} / {"kind": "ball3d", "R": 1, "bc": "dirichlet"}
  /// / {"kind": "disk", "R": 1} / {"kind": "region", "path": ".."} or
  /// {"kind": "region", "outer": [...], "holes": [...]}.
  static ShapeSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct RunConfig {
  Command command = Command::Verify;
  std::optional<ShapeSpec> shape;
  std::string coefficients_path;  // transform/solve from a coefficient file
  std::optional<double> lambda_max;
  std::optional<Grid> lambda_grid;
  std::optional<Grid> t_grid;
  std::optional<std::uint64_t> n_min;
  std::optional<std::uint64_t> n_max;
  TableFormat format = TableFormat::Csv;
  std::string output;      // file; empty means the output stream
  std::string output_dir;  // verify writes several tables here
  std::optional<double> tail_cutoff;
  std::optional<double> tolerance;
  std::optional<double> beta;

  /// Throws UsageError.
  void validate() const;
  /// Canonical form; its FNV-1a hash is the provenance config hash.
  nlohmann::json to_json() const;
  std::string hash() const;
};

/// Merges a JSON config file under the explicitly given flags (flags win).
/// Throws UsageError on bad arguments.
RunConfig parse_command_line(int argc, const char* const* argv);

/// Executes one run. Returns the exit status: 0 success, 2 usage error, 3
/// numerical or I/O failure. Errors are reported as one JSON object on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run with the same exit-status contract.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weylkit
