// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/core.h>

#include "weylkit/asymptotics.hpp"
#include "weylkit/cli.hpp"
#include "weylkit/error.hpp"
#include "weylkit/planar_region.hpp"
#include "weylkit/shapes.hpp"
#include "weylkit/spectrum.hpp"
#include "weylkit/weyl_transform.hpp"

#ifndef WEYLKIT_CLI_PATH
#error "WEYLKIT_CLI_PATH must name the weylkit executable"
#endif

using namespace weylkit;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::cout << fmt::format("{} [{:>2}] {}: {}", pass ? "PASS" : "FAIL", id, title, detail) << std::endl;
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void guarded(int id, const std::string& title, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, title, false, fmt::format("threw {}", e.what()));
  }
}

// ---------------------------------------------------------------------------

void laplace_identity() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const std::vector<double>& sides : {std::vector<double>{1, 1}, std::vector<double>{1, 1, 1}}) {
    const Spectrum s = box_spectrum({sides}, 2000.0);
    for (double t : {0.01, 0.1, 1.0}) worst = std::max(worst, std::abs(laplace_forward_check(s, t).residual));
  }
  const double elapsed = seconds_since(start);
  report(1, "Laplace identity on unit square and cube", worst <= 1e-12 && elapsed < 5.0,
         fmt::format("max relative residual {:.3e} (limit 1e-12), {:.3f} s (limit 5 s)", worst, elapsed));
}

void smoothed_counting() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(1234567);
  double worst = 0.0;
  std::size_t mismatches = 0, samples = 0;
  const std::vector<std::vector<double>> shapes = {{1, 1}, {1, 1, 1}, {1, 2}, {1, 1.5, 2}};
  for (const auto& sides : shapes) {
    const Spectrum s = box_spectrum({sides}, 2000.0);
    const SmoothingConfig cfg = SmoothingConfig::geometric(s);
    const auto evs = s.eigenvalues();
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < evs.size(); ++i) {
      const double mid = 0.5 * (evs[i] + evs[i + 1]);
      if (mid <= 0.95 * s.truncation_bound()) mids.push_back(mid);
    }
    mids.insert(mids.begin(), 0.5 * evs[0]);
    std::uniform_int_distribution<std::size_t> pick(0, mids.size() - 1);
    for (int i = 0; i < 200; ++i) {
      const double lambda = mids[pick(rng)];
      const SmoothedCount c = count_smoothed(s, lambda, cfg);
      const auto direct = static_cast<double>(count_direct(s, lambda));
      worst = std::max(worst, std::abs(c.value - direct));
      if (std::llround(c.value) != std::llround(direct)) ++mismatches;
      ++samples;
    }
  }
  const double elapsed = seconds_since(start);
  report(2, "Smoothed counting at gap midpoints", mismatches == 0 && worst <= 1e-8 && elapsed < 10.0,
         fmt::format("{} samples over {} box spectra, {} rounding mismatches, max deviation {:.3e} "
                     "(limit 1e-8), {:.3f} s (limit 10 s)",
                     samples, shapes.size(), mismatches, worst, elapsed));
}

// Counting coefficients of a D-box from the subset-sum formula, generic in D.
std::vector<double> box_counting_by_subsets(const std::vector<double>& sides) {
  const int d = static_cast<int>(sides.size());
  double v = 1.0;
  for (double l : sides) v *= l;
  std::vector<double> out(static_cast<std::size_t>(d) + 1, 0.0);
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    double term = v;
    int nu = 0;
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) {
        term /= sides[static_cast<std::size_t>(i)];
        ++nu;
      }
    out[static_cast<std::size_t>(nu)] += term;
  }
  for (int nu = 0; nu <= d; ++nu) {
    const double sign = nu % 2 ? -1.0 : 1.0;
    out[static_cast<std::size_t>(nu)] *= std::pow(4.0 * kPi, -0.5 * d) * sign * std::pow(kPi, 0.5 * nu) /
                                         std::tgamma(0.5 * d + 1.0 - 0.5 * nu);
  }
  return out;
}

void box_coefficients() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> side(0.1, 10.0);
  double worst = 0.0;
  int cases = 0;
  for (int d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> sides;
      for (int i = 0; i < d; ++i) sides.push_back(trial == 0 ? 1.0 : side(rng));
      const CountingSeries cs = transform_coefficients(box_heat_coefficients({sides}, HalfIndex::from_twice(d)));
      const auto oracle = box_counting_by_subsets(sides);
      if (cs.power_terms().size() != oracle.size()) {
        worst = INFINITY;
        continue;
      }
      for (std::size_t j = 0; j < oracle.size(); ++j)
        worst = std::max(worst, std::abs(cs.power_terms()[j].coefficient - oracle[j]) / std::abs(oracle[j]));
      ++cases;
    }
  report(3, "Box coefficient transform vs subset formula", worst <= 1e-12,
         fmt::format("{} random boxes for D = 1, 2, 3, max relative difference {:.3e} (limit 1e-12)", cases, worst));
}

void ball_series() {
  const Spectrum s = ball3d_spectrum({1.0}, 3000.0);
  const CountingSeries cs = ball3d_counting_series({1.0});
  double worst_ratio = 0.0;
  double worst_at = 0.0;
  int windows = 0;
  for (double lo = 500.0; lo + 100.0 <= 3000.0 + 1e-9; lo += 100.0) {
    const int samples = 2000;
    double mean = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double lambda = lo + 100.0 * (i + 0.5) / samples;
      mean += static_cast<double>(count_direct(s, lambda)) - evaluate_counting_series(cs, lambda).value;
    }
    mean /= samples;
    const double centre = lo + 50.0;
    const double leading = cs.power_terms()[0].coefficient * std::pow(centre, 1.5);
    if (std::abs(mean) / leading > worst_ratio) {
      worst_ratio = std::abs(mean) / leading;
      worst_at = centre;
    }
    ++windows;
  }
  report(4, "3D ball series vs Bessel-zero oracle", worst_ratio <= 0.02,
         fmt::format("{} states below 3000, {} windows of width 100, max |window mean| / leading term "
                     "{:.3e} at lambda {} (limit 0.02)",
                     s.total_count(), windows, worst_ratio, worst_at));
}

void disk_boundary_coefficient() {
  const Spectrum s = disk_spectrum(1.0, 1e4);
  const double area = kPi, length = 2.0 * kPi;
  // least squares y = a sqrt(l) + c on l in [1000, 10000]
  double sxx = 0, sx = 0, sy = 0, sxy = 0;
  int n = 0;
  for (double lambda = 1000.0; lambda <= 1e4; lambda += 0.5) {
    const double x = std::sqrt(lambda);
    const double y = static_cast<double>(count_direct(s, lambda)) - area * lambda / (4.0 * kPi);
    sxx += x * x;
    sx += x;
    sy += y;
    sxy += x * y;
    ++n;
  }
  const double a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double transform_value = -length / (4.0 * kPi);
  const double displayed_value = -length / kPi;
  const double rel = std::abs(a - transform_value) / std::abs(transform_value);
  report(5, "Disk sqrt(lambda) coefficient", rel <= 0.2,
         fmt::format("fitted {:.5f}; transform value -L/(4 pi) = {:.5f} (off by {:.2f}%, limit 20%); "
                     "alternative -L/pi = {:.5f} (off by {:.2f}%)",
                     a, transform_value, 100.0 * rel, displayed_value,
                     100.0 * std::abs(a - displayed_value) / std::abs(displayed_value)));
}

Polyline blob_curve(std::size_t n, double cx, double cy, double scale, double phase) {
  Polyline p;
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double r = scale * (1.0 + 0.12 * std::cos(5.0 * th + phase) + 0.05 * std::sin(2.0 * th));
    p.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
  }
  return p;
}

void gauss_bonnet() {
  constexpr std::size_t kSamples = 6000;
  const auto start = std::chrono::steady_clock::now();
  const double centres[3][2] = {{0.45, 0.0}, {-0.27, 0.4}, {-0.27, -0.4}};
  double worst = 0.0;
  std::string per_r;
  for (int r = 0; r <= 3; ++r) {
    std::vector<Polyline> holes;
    for (int h = 0; h < r; ++h) holes.push_back(blob_curve(kSamples, centres[h][0], centres[h][1], 0.13, h));
    const PlanarRegion region(blob_curve(kSamples, 0, 0, 1.0, 0.0), holes);
    const double defect = std::abs(boundary_curvature(region).total - 2.0 * kPi * (1 - r));
    worst = std::max(worst, defect);
    per_r += fmt::format("{}r={}: {:.2e}", r ? ", " : "", r, defect);
  }
  const double elapsed = seconds_since(start);
  report(6, "Gauss-Bonnet on a blob with 0..3 holes", worst <= kGaussBonnetTolerance && elapsed < 1.0,
         fmt::format("{} points per curve, defects {} (limit {:.3e}), {:.3f} s (limit 1 s)", kSamples, per_r,
                     kGaussBonnetTolerance, elapsed));
}

void ball_asymptotics() {
  const Spectrum s = ball3d_spectrum({1.0}, 3000.0);
  const SpectrumAsymptotics sa = expansion_coefficients(ball3d_heat_coefficients({1.0}));
  double worst = 0.0;
  std::uint64_t worst_n = 0;
  std::vector<double> window_means;
  std::vector<double> window_centres;
  for (std::uint64_t lo = 100; lo < 2000; lo += 100) {
    double sum = 0.0;
    const std::uint64_t hi = lo + 100;
    for (std::uint64_t n = lo; n < hi || (hi == 2000 && n == 2000); ++n) {
      const double exact = s.nth_eigenvalue(n);
      const double rel = std::abs(evaluate_expansion(sa, n) - exact) / exact;
      if (rel > worst) {
        worst = rel;
        worst_n = n;
      }
      sum += rel;
    }
    window_means.push_back(sum / static_cast<double>(hi - lo + (hi == 2000 ? 1 : 0)));
    window_centres.push_back(0.5 * static_cast<double>(lo + hi));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < window_means.size(); ++i) {
    mx += window_centres[i];
    my += window_means[i];
  }
  mx /= static_cast<double>(window_means.size());
  my /= static_cast<double>(window_means.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < window_means.size(); ++i) {
    num += (window_centres[i] - mx) * (window_means[i] - my);
    den += (window_centres[i] - mx) * (window_centres[i] - mx);
  }
  const double slope = num / den;
  const bool decreasing = slope < 0.0 && window_means.back() < window_means.front();
  report(7, "3D ball eigenvalue expansion vs oracle", worst <= 0.05 && decreasing,
         fmt::format("max relative error {:.3e} at n = {} (limit 0.05); window means {:.3e} -> {:.3e}, "
                     "slope {:.3e} per index",
                     worst, worst_n, window_means.front(), window_means.back(), slope));
}

void inverse_check() {
  const auto hk = disk_heat_coefficients(1.0);
  const CountingSeries cs = transform_coefficients(hk);
  const double d1 = inverse_check_2d_leading(cs, hk, 1e3);
  const double d2 = inverse_check_2d_leading(cs, hk, 4e3);
  const double d3 = inverse_check_2d_leading(cs, hk, 1e4);
  report(8, "2D leading-order equality on the unit disk", d3 <= 0.03 && d1 > d2 && d2 > d3,
         fmt::format("deviation {:.3e}, {:.3e}, {:.3e} at 1e3, 4e3, 1e4 (limit 0.03 at 1e4, decreasing)", d1, d2,
                     d3));
}

double integrate_density(const Spectrum& s, double upper, double beta) {
  // Split at the midpoints between levels so every piece holds one kernel peak.
  const auto evs = s.eigenvalues();
  std::vector<double> cuts = {0.0};
  for (std::size_t i = 0; i + 1 < evs.size() && evs[i + 1] < upper; ++i) cuts.push_back(0.5 * (evs[i] + evs[i + 1]));
  cuts.push_back(upper);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double x) { return density_smoothed(s, std::max(x, 1e-300), beta); }, cuts[i], cuts[i + 1], 15, 1e-12);
  }
  return total;
}

void density_normalization() {
  struct Case {
    std::string name;
    Spectrum spectrum;
  };
  std::vector<Case> cases;
  cases.push_back({"unit square", box_spectrum({{1.0, 1.0}}, 2000.0)});
  cases.push_back({"unit cube", box_spectrum({{1.0, 1.0, 1.0}}, 2000.0)});
  cases.push_back({"ball", ball3d_spectrum({1.0}, 2000.0)});
  cases.push_back({"disk", disk_spectrum(1.0, 2000.0)});
  double worst_quad = 0.0;
  std::string quad_detail;
  for (const auto& c : cases) {
    const auto evs = c.spectrum.eigenvalues();
    const double target = 0.9 * c.spectrum.truncation_bound();
    const auto it = std::lower_bound(evs.begin(), evs.end(), target);
    const double upper = 0.5 * (*(it - 1) + *it);
    const double gap = *it - *(it - 1);
    const double beta = 60.0 / gap;
    const double integral = integrate_density(c.spectrum, upper, beta);
    const auto n = static_cast<double>(count_direct(c.spectrum, upper));
    const double rel = std::abs(integral - n) / n;
    worst_quad = std::max(worst_quad, rel);
    quad_detail += fmt::format("{}{} {:.2e}", quad_detail.empty() ? "" : ", ", c.name, rel);
  }

  double worst_fd = 0.0;
  for (const CountingSeries& cs :
       {ball3d_counting_series({1.0}), transform_coefficients(disk_heat_coefficients(1.0)),
        transform_coefficients(box_heat_coefficients({{1.0, 1.0}}, HalfIndex::whole(1))),
        transform_coefficients(box_heat_coefficients({{1.0, 1.0, 1.0}}, HalfIndex::from_twice(3)))}) {
    const double h = 1e-3;
    const double fd = (evaluate_counting_series(cs, 100.0 + h).value - evaluate_counting_series(cs, 100.0 - h).value) /
                      (2.0 * h);
    const double rho = evaluate_counting_series(density_series(cs), 100.0).value;
    worst_fd = std::max(worst_fd, std::abs(rho - fd) / std::abs(fd));
  }
  report(9, "Density normalization and series derivative", worst_quad <= 1e-3 && worst_fd <= 1e-6,
         fmt::format("quadrature vs N: {} (limit 1e-3); series vs central difference at 100: {:.3e} (limit 1e-6)",
                     quad_detail, worst_fd));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const fs::path root = fs::temp_directory_path() / "weylkit_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::string> base = {"weylkit", "verify", "--shape", "box", "--D", "2", "--L", "1,1",
                                         "--lambda-max", "1000", "--output-dir"};
  std::vector<fs::path> dirs;

  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / fmt::format("in_process_{}", run);
    std::vector<std::string> args = base;
    args.push_back(dir.string());
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    if (run_main(static_cast<int>(argv.size()), argv.data(), out, err) != 0)
      throw std::runtime_error("in-process verify failed: " + err.str());
    dirs.push_back(dir);
  }
  for (const char* threads : {"1", "0"}) {
    const fs::path dir = root / fmt::format("binary_threads_{}", threads);
    const std::string cmd = fmt::format("WEYLKIT_THREADS={} \"{}\" verify --shape box --D 2 --L 1,1 "
                                        "--lambda-max 1000 --output-dir \"{}\" > /dev/null",
                                        threads, WEYLKIT_CLI_PATH, dir.string());
    if (std::system(cmd.c_str()) != 0) throw std::runtime_error("CLI verify failed");
    dirs.push_back(dir);
  }

  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(dirs.front())) {
    const std::string reference = slurp(entry.path());
    ++files;
    for (std::size_t i = 1; i < dirs.size(); ++i)
      if (slurp(dirs[i] / entry.path().filename()) != reference) ++differing;
  }
  for (const auto& dir : dirs)
    if (static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator())) != files)
      ++differing;
  fs::remove_all(root);
  report(10, "Deterministic verify output", files == 4 && differing == 0,
         fmt::format("{} files compared across 2 in-process runs and 2 CLI runs (1 thread, auto), {} differ",
                     files, differing));
}

}  // namespace

int main() {
  guarded(1, "Laplace identity on unit square and cube", laplace_identity);
  guarded(2, "Smoothed counting at gap midpoints", smoothed_counting);
  guarded(3, "Box coefficient transform vs subset formula", box_coefficients);
  guarded(4, "3D ball series vs Bessel-zero oracle", ball_series);
  guarded(5, "Disk sqrt(lambda) coefficient", disk_boundary_coefficient);
  guarded(6, "Gauss-Bonnet on a blob with 0..3 holes", gauss_bonnet);
  guarded(7, "3D ball eigenvalue expansion vs oracle", ball_asymptotics);
  guarded(8, "2D leading-order equality on the unit disk", inverse_check);
  guarded(9, "Density normalization and series derivative", density_normalization);
  guarded(10, "Deterministic verify output", determinism);
  std::cout << fmt::format("{} of 10 criteria passed", 10 - failures) << std::endl;
  return failures == 0 ? 0 : 1;
}
