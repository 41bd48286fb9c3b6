#include "weylkit/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "weylkit/asymptotics.hpp"
#include "weylkit/error.hpp"
#include "weylkit/planar_region.hpp"
#include "weylkit/series_io.hpp"
#include "weylkit/spectrum_io.hpp"
#include "weylkit/summation.hpp"
#include "weylkit/weyl_transform.hpp"

namespace weylkit {

namespace {

const std::vector<std::pair<std::string, Command>> kCommands = {
    {"spectrum", Command::Spectrum}, {"count", Command::Count},   {"heat", Command::Heat},
    {"coeffs", Command::Coeffs},     {"transform", Command::Transform},
    {"solve", Command::Solve},       {"density", Command::Density}, {"verify", Command::Verify}};

Command command_from(const std::string& s) {
  for (const auto& [name, cmd] : kCommands)
    if (name == s) return cmd;
  throw UsageError(fmt::format("unknown command '{}'", s));
}

std::string command_name(Command c) {
  for (const auto& [name, cmd] : kCommands)
    if (cmd == c) return name;
  return "?";
}

ShapeKind shape_kind_from(const std::string& s) {
  if (s == "box") return ShapeKind::Box;
  if (s == "ball3d") return ShapeKind::Ball3D;
  if (s == "disk") return ShapeKind::Disk;
  if (s == "region") return ShapeKind::Region;
  throw UsageError(fmt::format("unknown shape '{}' (box, ball3d, disk, region)", s));
}

std::string shape_kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::Box: return "box";
    case ShapeKind::Ball3D: return "ball3d";
    case ShapeKind::Disk: return "disk";
    case ShapeKind::Region: return "region";
  }
  return "?";
}

BoundaryCondition boundary_from(const std::string& s) {
  if (s == "dirichlet") return BoundaryCondition::Dirichlet;
  if (s == "neumann" || s == "robin") return BoundaryCondition::NeumannOrRobin;
  throw UsageError(fmt::format("unknown boundary condition '{}'", s));
}

TableFormat format_from(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "json") return TableFormat::Json;
  throw UsageError(fmt::format("unknown output format '{}' (csv, json)", s));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot read {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json parse_json_arg(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(fmt::format("{} is not valid JSON: {}", what, e.what()));
  }
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Shape-dependent building blocks

struct ShapeModel {
  std::string tag;
  std::optional<HeatKernelCoefficients> coefficients;
  CountingSeries series;
  std::optional<WeylMajorant> majorant;
};

PlanarRegion region_of(const ShapeSpec& s) {
  if (!s.region_inline.is_null()) return planar_region_from_json(s.region_inline.dump());
  return load_planar_region(s.region_path);
}

ShapeModel model_of(const ShapeSpec& s) {
  switch (s.kind) {
    case ShapeKind::Box: {
      const BoxShape box{s.sides};
      auto hk = box_heat_coefficients(box, HalfIndex::from_twice(std::max(2, box.dimension())));
      auto series = transform_coefficients(box_heat_coefficients(box, HalfIndex::from_twice(box.dimension())));
      return {fmt::format("box D={}", box.dimension()), std::move(hk), std::move(series),
              box_weyl_majorant(box)};
    }
    case ShapeKind::Ball3D: {
      const Ball3DShape ball{s.radius, s.boundary};
      return {"ball3d", ball3d_heat_coefficients(ball), ball3d_counting_series(ball),
              ball_weyl_majorant(3, s.radius)};
    }
    case ShapeKind::Disk: {
      auto hk = disk_heat_coefficients(s.radius);
      auto series = transform_coefficients(hk);
      return {"disk", std::move(hk), std::move(series), ball_weyl_majorant(2, s.radius)};
    }
    case ShapeKind::Region: {
      auto hk = planar_heat_coefficients(region_of(s));
      auto series = transform_coefficients(hk);
      return {"region", std::move(hk), std::move(series), std::nullopt};
    }
  }
  throw UsageError("unknown shape");
}

Spectrum spectrum_of(const ShapeSpec& s, double lambda_max) {
  switch (s.kind) {
    case ShapeKind::Box: return box_spectrum(BoxShape{s.sides}, lambda_max);
    case ShapeKind::Ball3D: return ball3d_spectrum(Ball3DShape{s.radius, s.boundary}, lambda_max);
    case ShapeKind::Disk: return disk_spectrum(s.radius, lambda_max);
    case ShapeKind::Region:
      throw UsageError("planar regions have no exact spectrum generator");
  }
  throw UsageError("unknown shape");
}

SmoothingConfig smoothing_of(const RunConfig& c, const Spectrum& spectrum) {
  SmoothingConfig cfg = SmoothingConfig::geometric(spectrum);
  if (c.tail_cutoff) cfg.tail_cutoff = *c.tail_cutoff;
  if (c.tolerance) cfg.tolerance = *c.tolerance;
  return cfg;
}

Grid default_lambda_grid(double lambda_max) { return {lambda_max / 20.0, 0.9 * lambda_max, 35, false}; }
Grid default_t_grid(double lambda_max) { return {20.0 / lambda_max, 2000.0 / lambda_max, 16, true}; }

// ---------------------------------------------------------------------------
// Tables

Table make_table(const RunConfig& c, const std::string& shape_tag,
                 std::optional<double> truncation) {
  Table t;
  t.provenance = {{"tool", kToolVersion},
                  {"command", command_name(c.command)},
                  {"config_hash", c.hash()},
                  {"shape", shape_tag}};
  if (truncation) t.provenance.emplace_back("truncation_bound", format_double(*truncation));
  return t;
}

Row count_row(double lambda, const Spectrum& spectrum, const SmoothingConfig& cfg,
              const CountingSeries& series) {
  const auto direct = static_cast<std::int64_t>(count_direct(spectrum, lambda));
  double smoothed = std::nan("");
  double beta = std::nan("");
  double delta = std::nan("");
  std::string status = "ok";
  try {
    const SmoothedCount s = count_smoothed(spectrum, lambda, cfg);
    smoothed = s.value;
    beta = s.beta;
    delta = std::abs(s.value - s.previous);
  } catch (const DegeneratePointError& e) {
    smoothed = e.fermi_limit();
    status = "degenerate";
  } catch (const NonConvergenceError& e) {
    smoothed = e.last();
    delta = std::abs(e.last() - e.previous());
    status = "not_converged";
  } catch (const TruncationError&) {
    status = "uncertified";
  }
  const SeriesValue sv = evaluate_counting_series(series, lambda);
  return {{"lambda", lambda},
          {"n_direct", direct},
          {"n_smoothed", smoothed},
          {"smoothing_beta", beta},
          {"smoothing_delta", delta},
          {"smoothing_status", status},
          {"n_series", sv.value},
          {"series_last_term", sv.last_term},
          {"direct_minus_series", static_cast<double>(direct) - sv.value}};
}

Table count_table(const RunConfig& c, const Spectrum& spectrum, const ShapeModel& model,
                  const Grid& grid) {
  Table t = make_table(c, spectrum.shape_tag(), spectrum.truncation_bound());
  const SmoothingConfig cfg = smoothing_of(c, spectrum);
  for (double lambda : grid.points()) t.rows.push_back(count_row(lambda, spectrum, cfg, model.series));
  return t;
}

Table heat_table(const RunConfig& c, const Spectrum& spectrum, const ShapeModel& model,
                 const Grid& grid) {
  Table t = make_table(c, spectrum.shape_tag(), spectrum.truncation_bound());
  for (double time : grid.points()) {
    const HeatTrace h = model.majorant ? heat_trace(spectrum, time, *model.majorant)
                                       : heat_trace(spectrum, time);
    const double series = model.coefficients ? model.coefficients->evaluate(time) : std::nan("");
    t.rows.push_back({{"t", time},
                      {"trace", h.value},
                      {"tail_bound", h.tail_bound},
                      {"series", series},
                      {"trace_minus_series", h.value - series}});
  }
  return t;
}

Table laplace_table(const RunConfig& c, const Spectrum& spectrum, const Grid& grid) {
  Table t = make_table(c, spectrum.shape_tag(), spectrum.truncation_bound());
  for (double time : grid.points()) {
    const LaplaceCheck chk = laplace_forward_check(spectrum, time);
    t.rows.push_back({{"t", time},
                      {"step_integral", chk.integral},
                      {"trace_side", chk.trace_side},
                      {"relative_residual", chk.residual}});
  }
  return t;
}

Table coefficient_table(const RunConfig& c, const std::string& tag,
                        const std::optional<HeatKernelCoefficients>& hk, const CountingSeries& cs) {
  Table t = make_table(c, tag, std::nullopt);
  for (const auto& p : cs.power_terms())
    t.rows.push_back({{"k2", static_cast<std::int64_t>(p.k.twice())},
                      {"B_k", hk ? hk->at(p.k) : std::nan("")},
                      {"term", std::string(p.kind == TermKind::Convergent ? "convergent" : "continued")},
                      {"exponent", p.exponent},
                      {"delta_order", static_cast<std::int64_t>(-1)},
                      {"coefficient", p.coefficient}});
  for (const auto& d : cs.delta_terms())
    t.rows.push_back({{"k2", static_cast<std::int64_t>(d.k.twice())},
                      {"B_k", hk ? hk->at(d.k) : std::nan("")},
                      {"term", std::string("delta")},
                      {"exponent", std::nan("")},
                      {"delta_order", static_cast<std::int64_t>(d.order)},
                      {"coefficient", d.weight}});
  return t;
}

void deliver(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
  } else {
    write_text_file(c.output, text);
  }
}

std::string extension(TableFormat f) { return f == TableFormat::Csv ? "csv" : "json"; }

// ---------------------------------------------------------------------------
// Commands

void run_spectrum(const RunConfig& c, std::ostream& out) {
  const Spectrum spectrum = spectrum_of(*c.shape, *c.lambda_max);
  if (c.format == TableFormat::Json) return deliver(c, spectrum_to_json(spectrum), out);
  Table t = make_table(c, spectrum.shape_tag(), spectrum.truncation_bound());
  const auto evs = spectrum.eigenvalues();
  const auto mult = spectrum.multiplicities();
  for (std::size_t i = 0; i < evs.size(); ++i)
    t.rows.push_back({{"lambda", evs[i]}, {"multiplicity", static_cast<std::int64_t>(mult[i])}});
  deliver(c, render_table(t, c.format), out);
}

std::pair<std::optional<HeatKernelCoefficients>, CountingSeries> series_source(const RunConfig& c,
                                                                              std::string& tag) {
  if (!c.coefficients_path.empty()) {
    auto hk = load_coefficients(c.coefficients_path);
    tag = "coefficients:" + c.coefficients_path;
    auto cs = transform_coefficients(hk);
    return {std::move(hk), std::move(cs)};
  }
  ShapeModel m = model_of(*c.shape);
  tag = m.tag;
  return {std::move(m.coefficients), std::move(m.series)};
}

void run_coeffs(const RunConfig& c, std::ostream& out) {
  std::string tag;
  auto [hk, cs] = series_source(c, tag);
  deliver(c, render_table(coefficient_table(c, tag, hk, cs), c.format), out);
}

void run_transform(const RunConfig& c, std::ostream& out) {
  std::string tag;
  auto [hk, cs] = series_source(c, tag);
  if (c.format == TableFormat::Json) return deliver(c, counting_series_to_json(cs), out);
  deliver(c, render_table(coefficient_table(c, tag, hk, cs), c.format), out);
}

void run_solve(const RunConfig& c, std::ostream& out) {
  std::string tag;
  auto [hk, cs] = series_source(c, tag);
  std::optional<SpectrumAsymptotics> sa;
  if (hk && hk->max_index().twice() >= 2) sa = expansion_coefficients(*hk);
  std::optional<Spectrum> spectrum;
  if (c.lambda_max && c.shape && c.shape->kind != ShapeKind::Region)
    spectrum = spectrum_of(*c.shape, *c.lambda_max);

  Table t = make_table(c, tag, spectrum ? std::optional(spectrum->truncation_bound()) : std::nullopt);
  const std::uint64_t lo = c.n_min.value_or(1);
  const std::uint64_t hi = c.n_max.value_or(50);
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const double solved = eigenvalue_solve(cs, n);
    const double expanded = sa ? evaluate_expansion(*sa, n) : std::nan("");
    const double exact =
        (spectrum && n <= spectrum->total_count()) ? spectrum->nth_eigenvalue(n) : std::nan("");
    t.rows.push_back({{"n", static_cast<std::int64_t>(n)},
                      {"lambda_solved", solved},
                      {"lambda_expansion", expanded},
                      {"lambda_exact", exact},
                      {"solved_rel_error", (solved - exact) / exact},
                      {"expansion_rel_error", (expanded - exact) / exact}});
  }
  deliver(c, render_table(t, c.format), out);
}

void run_count(const RunConfig& c, std::ostream& out) {
  const Spectrum spectrum = spectrum_of(*c.shape, *c.lambda_max);
  const ShapeModel model = model_of(*c.shape);
  const Grid grid = c.lambda_grid.value_or(default_lambda_grid(*c.lambda_max));
  deliver(c, render_table(count_table(c, spectrum, model, grid), c.format), out);
}

void run_heat(const RunConfig& c, std::ostream& out) {
  const Spectrum spectrum = spectrum_of(*c.shape, *c.lambda_max);
  const ShapeModel model = model_of(*c.shape);
  const Grid grid = c.t_grid.value_or(default_t_grid(*c.lambda_max));
  deliver(c, render_table(heat_table(c, spectrum, model, grid), c.format), out);
}

void run_density(const RunConfig& c, std::ostream& out) {
  const Spectrum spectrum = spectrum_of(*c.shape, *c.lambda_max);
  const ShapeModel model = model_of(*c.shape);
  const CountingSeries density = density_series(model.series);
  const double beta = c.beta.value_or(64.0 / spectrum.median_eigenvalue());
  const double cutoff = c.tail_cutoff.value_or(30.0);
  const Grid grid = c.lambda_grid.value_or(default_lambda_grid(*c.lambda_max));
  Table t = make_table(c, spectrum.shape_tag(), spectrum.truncation_bound());
  t.provenance.emplace_back("beta", format_double(beta));
  for (double lambda : grid.points()) {
    double smoothed = std::nan("");
    try {
      smoothed = density_smoothed(spectrum, lambda, beta, cutoff);
    } catch (const TruncationError&) {
    }
    t.rows.push_back({{"lambda", lambda},
                      {"density_smoothed", smoothed},
                      {"density_series", evaluate_counting_series(density, lambda).value}});
  }
  deliver(c, render_table(t, c.format), out);
}

void run_verify(const RunConfig& c, std::ostream& out) {
  const Spectrum spectrum = spectrum_of(*c.shape, *c.lambda_max);
  const ShapeModel model = model_of(*c.shape);
  const Grid lambda_grid = c.lambda_grid.value_or(default_lambda_grid(*c.lambda_max));
  const Grid t_grid = c.t_grid.value_or(default_t_grid(*c.lambda_max));

  const Table counts = count_table(c, spectrum, model, lambda_grid);
  const Table heat = heat_table(c, spectrum, model, t_grid);
  const Table laplace = laplace_table(c, spectrum, t_grid);

  double max_laplace = 0.0;
  for (const Row& r : laplace.rows) max_laplace = std::max(max_laplace, std::get<double>(r[3].second));
  double max_rel = 0.0;
  double mean_diff = 0.0;
  std::int64_t smoothing_mismatch = 0;
  for (const Row& r : counts.rows) {
    const auto direct = static_cast<double>(std::get<std::int64_t>(r[1].second));
    const double smoothed = std::get<double>(r[2].second);
    const double diff = std::get<double>(r[8].second);
    mean_diff += diff / static_cast<double>(counts.rows.size());
    if (direct > 0) max_rel = std::max(max_rel, std::abs(diff) / direct);
    if (std::get<std::string>(r[5].second) == "ok" && std::llround(smoothed) != std::llround(direct))
      ++smoothing_mismatch;
  }

  Table summary = make_table(c, spectrum.shape_tag(), spectrum.truncation_bound());
  summary.rows = {
      {{"metric", std::string("states_below_truncation")}, {"value", static_cast<double>(spectrum.total_count())}},
      {{"metric", std::string("max_laplace_relative_residual")}, {"value", max_laplace}},
      {{"metric", std::string("mean_direct_minus_series")}, {"value", mean_diff}},
      {{"metric", std::string("max_relative_direct_minus_series")}, {"value", max_rel}},
      {{"metric", std::string("smoothed_rounding_mismatches")}, {"value", static_cast<double>(smoothing_mismatch)}},
  };

  const std::string ext = extension(c.format);
  if (c.output_dir.empty()) {
    out << render_table(counts, c.format) << render_table(summary, c.format);
    return;
  }
  std::filesystem::create_directories(c.output_dir);
  const std::filesystem::path dir(c.output_dir);
  emit_table(counts, c.format, (dir / ("counting." + ext)).string());
  emit_table(heat, c.format, (dir / ("heat." + ext)).string());
  emit_table(laplace, c.format, (dir / ("laplace." + ext)).string());
  emit_table(summary, c.format, (dir / ("summary." + ext)).string());
  out << render_table(summary, c.format);
}

int report(std::ostream& err, const std::string& kind, const std::string& message, int code,
           nlohmann::json details = nlohmann::json::object()) {
  nlohmann::json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
  if (!details.empty()) j["details"] = std::move(details);
  err << j.dump() << '\n';
  return code;
}

}  // namespace

// ---------------------------------------------------------------------------

Grid Grid::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3 && parts.size() != 4)
    throw UsageError(fmt::format("grid '{}' must be start:stop:count[:log]", text));
  Grid g;
  try {
    g.start = std::stod(parts[0]);
    g.stop = std::stod(parts[1]);
    const long long n = std::stoll(parts[2]);
    if (n < 0) throw UsageError(fmt::format("grid '{}' has a negative count", text));
    g.count = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw UsageError(fmt::format("grid '{}' does not parse", text));
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log = true;
    } else if (parts[3] != "lin") {
      throw UsageError(fmt::format("grid spacing '{}' must be lin or log", parts[3]));
    }
  }
  return g;
}

std::vector<double> Grid::points() const {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (count == 1) {
      out.push_back(start);
    } else if (log) {
      out.push_back(start * std::pow(stop / start, static_cast<double>(i) / static_cast<double>(count - 1)));
    } else {
      out.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
  }
  return out;
}

std::string Grid::to_string() const {
  return fmt::format("{}:{}:{}:{}", format_double(start), format_double(stop), count,
                     log ? "log" : "lin");
}

ShapeSpec ShapeSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw UsageError("shape JSON needs a \"kind\" string");
  ShapeSpec s;
  try {
    s.kind = shape_kind_from(j["kind"].get<std::string>());
    switch (s.kind) {
      case ShapeKind::Box:
        s.sides = j.at("L").get<std::vector<double>>();
        break;
      case ShapeKind::Ball3D:
      case ShapeKind::Disk:
        s.radius = j.value("R", 1.0);
        s.boundary = boundary_from(j.value("bc", std::string("dirichlet")));
        break;
      case ShapeKind::Region:
        if (j.contains("path")) {
          s.region_path = j["path"].get<std::string>();
        } else {
          s.region_inline = {{"outer", j.at("outer")}, {"holes", j.value("holes", nlohmann::json::array())}};
        }
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(fmt::format("malformed shape JSON: {}", e.what()));
  }
  return s;
}

nlohmann::json ShapeSpec::to_json() const {
  nlohmann::json j = {{"kind", shape_kind_name(kind)}};
  switch (kind) {
    case ShapeKind::Box: j["L"] = sides; break;
    case ShapeKind::Ball3D:
    case ShapeKind::Disk:
      j["R"] = radius;
      j["bc"] = boundary == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
      break;
    case ShapeKind::Region:
      if (region_inline.is_null()) {
        j["path"] = region_path;
      } else {
        j["outer"] = region_inline["outer"];
        j["holes"] = region_inline["holes"];
      }
      break;
  }
  return j;
}

void RunConfig::validate() const {
  const bool needs_spectrum = command == Command::Spectrum || command == Command::Count ||
                              command == Command::Heat || command == Command::Density ||
                              command == Command::Verify;
  const bool has_coefficients = !coefficients_path.empty();
  if (shape && has_coefficients) throw UsageError("give either a shape or a coefficient file, not both");
  if (!shape && !has_coefficients) throw UsageError("no shape given (--shape, --shape-json or --shape-file)");
  if (needs_spectrum) {
    if (!shape) throw UsageError(fmt::format("'{}' needs a shape", command_name(command)));
    if (shape->kind == ShapeKind::Region)
      throw UsageError(fmt::format("'{}' needs an exact spectrum; planar regions only support "
                                   "coeffs, transform and solve",
                                   command_name(command)));
    if (!lambda_max) throw UsageError(fmt::format("'{}' needs --lambda-max", command_name(command)));
  }
  if (shape) {
    if (shape->kind == ShapeKind::Box) {
      if (shape->sides.empty()) throw UsageError("box needs side lengths (--L)");
      for (double l : shape->sides)
        if (!(l > 0.0)) throw UsageError("box side lengths must be positive");
    }
    if ((shape->kind == ShapeKind::Ball3D || shape->kind == ShapeKind::Disk) && !(shape->radius > 0.0))
      throw UsageError("radius must be positive");
    if (shape->kind == ShapeKind::Region && shape->region_path.empty() && shape->region_inline.is_null())
      throw UsageError("region shape needs --region or inline curves");
  }
  if (lambda_max && !(*lambda_max > 0.0)) throw UsageError("--lambda-max must be positive");
  for (const auto* g : {&lambda_grid, &t_grid}) {
    if (!*g) continue;
    if ((*g)->count == 0) throw UsageError("grid is empty");
    if (!((*g)->start > 0.0) || !((*g)->stop >= (*g)->start))
      throw UsageError("grid bounds must satisfy 0 < start <= stop");
  }
  if (lambda_grid && lambda_max && lambda_grid->stop > *lambda_max)
    throw UsageError("lambda grid extends past --lambda-max");
  if (n_min && *n_min == 0) throw UsageError("--n-min starts at 1");
  if (n_min && n_max && *n_max < *n_min) throw UsageError("--n-max is below --n-min");
  if (tail_cutoff && !(*tail_cutoff > 0.0)) throw UsageError("--tail-cutoff must be positive");
  if (tolerance && !(*tolerance > 0.0)) throw UsageError("--tolerance must be positive");
  if (beta && !(*beta > 0.0)) throw UsageError("--beta must be positive");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command_name(command);
  if (shape) j["shape"] = shape->to_json();
  if (!coefficients_path.empty()) j["coefficients"] = coefficients_path;
  if (lambda_max) j["lambda_max"] = *lambda_max;
  if (lambda_grid) j["lambda_grid"] = lambda_grid->to_string();
  if (t_grid) j["t_grid"] = t_grid->to_string();
  if (n_min) j["n_min"] = *n_min;
  if (n_max) j["n_max"] = *n_max;
  j["format"] = format == TableFormat::Csv ? "csv" : "json";
  if (tail_cutoff) j["tail_cutoff"] = *tail_cutoff;
  if (tolerance) j["tolerance"] = *tolerance;
  if (beta) j["beta"] = *beta;
  return j;
}

std::string RunConfig::hash() const { return fmt::format("{:016x}", fnv1a(to_json().dump())); }

RunConfig parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Spectral counting-function and heat-kernel toolkit", "weylkit"};
  std::string command;
  std::string config_path, shape, bc, region, shape_json, shape_file, coefficients;
  std::string lambda_grid, t_grid, format, output, output_dir;
  int dimension = 0;
  std::vector<double> sides;
  double radius = 1.0, lambda_max = 0.0, tail_cutoff = 0.0, tolerance = 0.0, beta = 0.0;
  std::uint64_t n_min = 0, n_max = 0;

  app.add_option("command", command, "spectrum|count|heat|coeffs|transform|solve|density|verify")
      ->required();
  auto* o_config = app.add_option("--config", config_path, "JSON config file (flags win)");
  auto* o_shape = app.add_option("--shape", shape, "box|ball3d|disk|region");
  auto* o_dim = app.add_option("--D", dimension, "box dimension");
  auto* o_sides = app.add_option("--L", sides, "box side lengths")->delimiter(',');
  auto* o_radius = app.add_option("--R", radius, "ball or disk radius");
  auto* o_bc = app.add_option("--bc", bc, "dirichlet|neumann");
  auto* o_region = app.add_option("--region", region, "planar region JSON file");
  auto* o_shape_json = app.add_option("--shape-json", shape_json, "inline shape JSON");
  auto* o_shape_file = app.add_option("--shape-file", shape_file, "shape JSON file");
  auto* o_coeffs = app.add_option("--coefficients", coefficients, "heat-kernel coefficient file");
  auto* o_lmax = app.add_option("--lambda-max", lambda_max, "spectrum truncation bound");
  auto* o_lgrid = app.add_option("--lambda-grid", lambda_grid, "start:stop:count[:log]");
  auto* o_tgrid = app.add_option("--t-grid", t_grid, "start:stop:count[:log]");
  auto* o_nmin = app.add_option("--n-min", n_min, "first eigenvalue index for solve");
  auto* o_nmax = app.add_option("--n-max", n_max, "last eigenvalue index for solve");
  auto* o_format = app.add_option("--format", format, "csv|json");
  auto* o_output = app.add_option("--output", output, "output file (default stdout)");
  auto* o_outdir = app.add_option("--output-dir", output_dir, "directory for verify tables");
  auto* o_cut = app.add_option("--tail-cutoff", tail_cutoff, "Fermi tail cutoff");
  auto* o_tol = app.add_option("--tolerance", tolerance, "smoothing convergence tolerance");
  auto* o_beta = app.add_option("--beta", beta, "inverse smoothing width for density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig c;
  // Config file first; explicit flags override below.
  nlohmann::json file = nlohmann::json::object();
  if (o_config->count()) file = parse_json_arg(read_file(config_path), "config file");
  try {
    if (file.contains("shape")) c.shape = ShapeSpec::from_json(file["shape"]);
    if (file.contains("coefficients")) c.coefficients_path = file["coefficients"].get<std::string>();
    if (file.contains("lambda_max")) c.lambda_max = file["lambda_max"].get<double>();
    if (file.contains("lambda_grid")) c.lambda_grid = Grid::parse(file["lambda_grid"].get<std::string>());
    if (file.contains("t_grid")) c.t_grid = Grid::parse(file["t_grid"].get<std::string>());
    if (file.contains("n_min")) c.n_min = file["n_min"].get<std::uint64_t>();
    if (file.contains("n_max")) c.n_max = file["n_max"].get<std::uint64_t>();
    if (file.contains("format")) c.format = format_from(file["format"].get<std::string>());
    if (file.contains("output")) c.output = file["output"].get<std::string>();
    if (file.contains("output_dir")) c.output_dir = file["output_dir"].get<std::string>();
    if (file.contains("tail_cutoff")) c.tail_cutoff = file["tail_cutoff"].get<double>();
    if (file.contains("tolerance")) c.tolerance = file["tolerance"].get<double>();
    if (file.contains("beta")) c.beta = file["beta"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(fmt::format("malformed config file: {}", e.what()));
  }

  c.command = command_from(command);

  const int shape_sources = (o_shape->count() ? 1 : 0) + (o_shape_json->count() ? 1 : 0) +
                            (o_shape_file->count() ? 1 : 0);
  if (shape_sources > 1) throw UsageError("give exactly one of --shape, --shape-json, --shape-file");
  if (o_shape_json->count()) c.shape = ShapeSpec::from_json(parse_json_arg(shape_json, "--shape-json"));
  if (o_shape_file->count())
    c.shape = ShapeSpec::from_json(parse_json_arg(read_file(shape_file), "--shape-file"));
  if (o_shape->count()) {
    ShapeSpec s;
    s.kind = shape_kind_from(shape);
    if (s.kind == ShapeKind::Box) {
      s.sides = sides;
      if (o_dim->count()) {
        if (dimension < 1) throw UsageError("--D must be >= 1");
        if (s.sides.empty()) s.sides.assign(static_cast<std::size_t>(dimension), 1.0);
        if (s.sides.size() == 1) s.sides.assign(static_cast<std::size_t>(dimension), s.sides.front());
        if (static_cast<int>(s.sides.size()) != dimension)
          throw UsageError(fmt::format("--D {} disagrees with {} side lengths", dimension, s.sides.size()));
      }
    } else if (o_sides->count()) {
      throw UsageError("--L applies to boxes only");
    }
    s.radius = radius;
    if (o_bc->count()) s.boundary = boundary_from(bc);
    if (s.kind == ShapeKind::Region) {
      if (!o_region->count()) throw UsageError("--shape region needs --region FILE");
      s.region_path = region;
    }
    c.shape = s;
  } else if (o_dim->count() || o_sides->count() || o_radius->count() || o_bc->count() ||
             o_region->count()) {
    if (!c.shape) throw UsageError("shape parameters given without --shape");
    if (o_sides->count()) c.shape->sides = sides;
    if (o_radius->count()) c.shape->radius = radius;
    if (o_bc->count()) c.shape->boundary = boundary_from(bc);
    if (o_region->count()) c.shape->region_path = region;
  }
  if (o_coeffs->count()) {
    c.coefficients_path = coefficients;
    if (!shape_sources) c.shape.reset();
  }
  if (o_lmax->count()) c.lambda_max = lambda_max;
  if (o_lgrid->count()) c.lambda_grid = Grid::parse(lambda_grid);
  if (o_tgrid->count()) c.t_grid = Grid::parse(t_grid);
  if (o_nmin->count()) c.n_min = n_min;
  if (o_nmax->count()) c.n_max = n_max;
  if (o_format->count()) c.format = format_from(format);
  if (o_output->count()) c.output = output;
  if (o_outdir->count()) c.output_dir = output_dir;
  if (o_cut->count()) c.tail_cutoff = tail_cutoff;
  if (o_tol->count()) c.tolerance = tolerance;
  if (o_beta->count()) c.beta = beta;
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    switch (config.command) {
      case Command::Spectrum: run_spectrum(config, out); break;
      case Command::Count: run_count(config, out); break;
      case Command::Heat: run_heat(config, out); break;
      case Command::Coeffs: run_coeffs(config, out); break;
      case Command::Transform: run_transform(config, out); break;
      case Command::Solve: run_solve(config, out); break;
      case Command::Density: run_density(config, out); break;
      case Command::Verify: run_verify(config, out); break;
    }
    return 0;
  } catch (const UsageError& e) {
    return report(err, e.kind(), e.what(), 2);
  } catch (const DegeneratePointError& e) {
    return report(err, e.kind(), e.what(), 3,
                  {{"step_count", e.step_count()}, {"fermi_limit", e.fermi_limit()}});
  } catch (const NonConvergenceError& e) {
    return report(err, e.kind(), e.what(), 3, {{"previous", e.previous()}, {"last", e.last()}});
  } catch (const TruncationError& e) {
    return report(err, e.kind(), e.what(), 3, {{"requested", e.requested()}, {"bound", e.bound()}});
  } catch (const RootFindError& e) {
    return report(err, e.kind(), e.what(), 3, {{"lo", e.lo()}, {"hi", e.hi()}});
  } catch (const ResolutionError& e) {
    return report(err, e.kind(), e.what(), 3, {{"estimate", e.estimate()}});
  } catch (const Error& e) {
    return report(err, e.kind(), e.what(), 3);
  } catch (const std::exception& e) {
    return report(err, "internal", e.what(), 3);
  }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv("WEYLKIT_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0')
      return report(err, "usage", fmt::format("WEYLKIT_THREADS='{}' is not a count", env), 2);
    set_thread_cap(static_cast<unsigned>(cap));
  }
  RunConfig config;
  try {
    config = parse_command_line(argc, argv);
  } catch (const UsageError& e) {
    return report(err, e.kind(), e.what(), 2);
  } catch (const Error& e) {
    return report(err, "usage", e.what(), 2);
  }
  return run(config, out, err);
}

}  // namespace weylkit
