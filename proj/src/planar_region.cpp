#include "weylkit/planar_region.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/core.h>
#include <json.hpp>

#include "weylkit/error.hpp"
#include "weylkit/summation.hpp"

namespace weylkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 16;

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

struct Segment {
  Point2 a;
  Point2 b;
  std::size_t curve;
  std::size_t index;
};

struct Box2 {
  double x0, y0, x1, y1;
  bool overlaps(const Box2& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
};

bool on_segment(const Point2& p, const Point2& q, const Point2& r) {
  return std::min(p[0], r[0]) <= q[0] && q[0] <= std::max(p[0], r[0]) &&
         std::min(p[1], r[1]) <= q[1] && q[1] <= std::max(p[1], r[1]);
}

bool segments_intersect(const Segment& s, const Segment& t) {
  const double o1 = cross(s.a, s.b, t.a);
  const double o2 = cross(s.a, s.b, t.b);
  const double o3 = cross(t.a, t.b, s.a);
  const double o4 = cross(t.a, t.b, s.b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return true;
  if (o1 == 0 && on_segment(s.a, t.a, s.b)) return true;
  if (o2 == 0 && on_segment(s.a, t.b, s.b)) return true;
  if (o3 == 0 && on_segment(t.a, s.a, t.b)) return true;
  if (o4 == 0 && on_segment(t.a, s.b, t.b)) return true;
  return false;
}

bool adjacent(const Segment& s, const Segment& t, const std::vector<std::size_t>& sizes) {
  if (s.curve != t.curve) return false;
  const std::size_t n = sizes[s.curve];
  return (s.index + 1) % n == t.index || (t.index + 1) % n == s.index;
}

// Chunked bounding boxes prune the all-pairs segment test.
void check_simple(const std::vector<const Polyline*>& curves) {
  std::vector<Segment> segs;
  std::vector<std::size_t> sizes;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Polyline& p = *curves[c];
    sizes.push_back(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) segs.push_back({p[i], p[(i + 1) % p.size()], c, i});
  }
  std::vector<Box2> boxes;
  for (std::size_t lo = 0; lo < segs.size(); lo += kChunk) {
    Box2 box{segs[lo].a[0], segs[lo].a[1], segs[lo].a[0], segs[lo].a[1]};
    for (std::size_t i = lo; i < std::min(segs.size(), lo + kChunk); ++i)
      for (const Point2& q : {segs[i].a, segs[i].b}) {
        box.x0 = std::min(box.x0, q[0]);
        box.y0 = std::min(box.y0, q[1]);
        box.x1 = std::max(box.x1, q[0]);
        box.y1 = std::max(box.y1, q[1]);
      }
    boxes.push_back(box);
  }
  for (std::size_t ci = 0; ci < boxes.size(); ++ci)
    for (std::size_t cj = ci; cj < boxes.size(); ++cj) {
      if (!boxes[ci].overlaps(boxes[cj])) continue;
      const std::size_t i_end = std::min(segs.size(), (ci + 1) * kChunk);
      const std::size_t j_end = std::min(segs.size(), (cj + 1) * kChunk);
      for (std::size_t i = ci * kChunk; i < i_end; ++i)
        for (std::size_t j = std::max(i + 1, cj * kChunk); j < j_end; ++j) {
          if (adjacent(segs[i], segs[j], sizes)) continue;
          if (segments_intersect(segs[i], segs[j]))
            throw InvalidRegionError(fmt::format(
                "boundary segments intersect (curve {} segment {}, curve {} segment {})",
                segs[i].curve, segs[i].index, segs[j].curve, segs[j].index));
        }
    }
}

bool inside(const Polyline& poly, const Point2& p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if ((a[1] > p[1]) != (b[1] > p[1]) &&
        p[0] < (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0])
      in = !in;
  }
  return in;
}

void check_samples(const Polyline& curve, const char* name) {
  if (curve.size() < 3) throw InvalidRegionError(fmt::format("{} curve needs >= 3 points", name));
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Point2& a = curve[i];
    const Point2& b = curve[(i + 1) % curve.size()];
    if (!std::isfinite(a[0]) || !std::isfinite(a[1]))
      throw InvalidRegionError(fmt::format("{} curve has a non-finite point", name));
    if (a == b) throw InvalidRegionError(fmt::format("{} curve repeats a point at #{}", name, i));
  }
}

struct CurveTurning {
  double turning;
  double discrepancy;
  double max_angle;
};

// Signed turning angle at each vertex; the Menger curvature times the dual
// length 2 sin(theta)/|p+ - p-| * (|d-| + |d+|)/2 is the comparison quadrature.
CurveTurning turning_of(const Polyline& c) {
  const std::size_t n = c.size();
  CompensatedSum turning;
  CompensatedSum discrepancy;
  double max_angle = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = c[(i + n - 1) % n];
    const Point2& q = c[i];
    const Point2& r = c[(i + 1) % n];
    const double ux = q[0] - p[0], uy = q[1] - p[1];
    const double vx = r[0] - q[0], vy = r[1] - q[1];
    const double theta = std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
    const double chord = std::hypot(r[0] - p[0], r[1] - p[1]);
    const double dual = 0.5 * (std::hypot(ux, uy) + std::hypot(vx, vy));
    const double menger = 2.0 * std::sin(theta) / chord * dual;
    turning.add(theta);
    discrepancy.add(std::abs(theta - menger));
    max_angle = std::max(max_angle, std::abs(theta));
  }
  return {turning.value(), discrepancy.value(), max_angle};
}

Polyline parse_curve(const nlohmann::json& j, const char* name) {
  if (!j.is_array()) throw SchemaError(fmt::format("{} must be an array of [x, y] points", name));
  Polyline out;
  out.reserve(j.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw SchemaError(fmt::format("{} points must be [x, y] number pairs", name));
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

}  // namespace

double signed_area(const Polyline& curve) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Point2& a = curve[i];
    const Point2& b = curve[(i + 1) % curve.size()];
    acc.add(a[0] * b[1] - b[0] * a[1]);
  }
  return 0.5 * acc.value();
}

double polyline_length(const Polyline& curve) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Point2& a = curve[i];
    const Point2& b = curve[(i + 1) % curve.size()];
    acc.add(std::hypot(b[0] - a[0], b[1] - a[1]));
  }
  return acc.value();
}

PlanarRegion::PlanarRegion(Polyline outer, std::vector<Polyline> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
  check_samples(outer_, "outer");
  for (const auto& h : holes_) check_samples(h, "hole");

  if (signed_area(outer_) < 0.0) std::reverse(outer_.begin(), outer_.end());
  for (auto& h : holes_)
    if (signed_area(h) > 0.0) std::reverse(h.begin(), h.end());

  std::vector<const Polyline*> curves{&outer_};
  for (const auto& h : holes_) curves.push_back(&h);
  check_simple(curves);

  for (std::size_t i = 0; i < holes_.size(); ++i) {
    if (!inside(outer_, holes_[i].front()))
      throw InvalidRegionError(fmt::format("hole {} is not inside the outer boundary", i));
    for (std::size_t j = 0; j < holes_.size(); ++j)
      if (i != j && inside(holes_[j], holes_[i].front()))
        throw InvalidRegionError(fmt::format("hole {} lies inside hole {}", i, j));
  }

  CompensatedSum area;
  CompensatedSum length;
  for (const Polyline* c : curves) {
    area.add(signed_area(*c));
    length.add(polyline_length(*c));
  }
  area_ = area.value();
  perimeter_ = length.value();
  if (!(area_ > 0.0)) throw InvalidRegionError("region area is not positive");
}

CurvatureIntegral boundary_curvature(const PlanarRegion& region) {
  CompensatedSum total;
  double worst = 0.0;
  std::vector<const Polyline*> curves{&region.outer()};
  for (const auto& h : region.holes()) curves.push_back(&h);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const CurveTurning t = turning_of(*curves[i]);
    if (t.max_angle > 0.25 * kPi)
      throw ResolutionError(
          fmt::format("curve {} turns by {} rad at a single vertex; resample more densely", i,
                      t.max_angle),
          t.discrepancy);
    if (t.discrepancy > kGaussBonnetTolerance)
      throw ResolutionError(
          fmt::format("curve {} curvature quadrature error estimate {} exceeds {}", i,
                      t.discrepancy, kGaussBonnetTolerance),
          t.discrepancy);
    total.add(t.turning);
    worst = std::max(worst, t.discrepancy);
  }
  return {total.value(), worst};
}

double gauss_bonnet_defect(const PlanarRegion& region) {
  return boundary_curvature(region).total - 2.0 * kPi * region.euler_characteristic();
}

HeatKernelCoefficients planar_heat_coefficients(const PlanarRegion& region) {
  const double defect = gauss_bonnet_defect(region);
  if (std::abs(defect) > kGaussBonnetTolerance)
    throw InvalidRegionError(fmt::format("Gauss-Bonnet defect {} exceeds tolerance", defect));
  return HeatKernelCoefficients(
      2, {region.area(), -0.5 * std::sqrt(kPi) * region.perimeter(),
          2.0 * kPi / 3.0 * region.euler_characteristic()});
}

PlanarRegion planar_region_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(fmt::format("region JSON does not parse: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("outer"))
    throw SchemaError("region JSON needs an \"outer\" curve");
  Polyline outer = parse_curve(j["outer"], "outer");
  std::vector<Polyline> holes;
  if (j.contains("holes")) {
    if (!j["holes"].is_array()) throw SchemaError("\"holes\" must be an array of curves");
    for (const auto& h : j["holes"]) holes.push_back(parse_curve(h, "hole"));
  }
  return PlanarRegion(std::move(outer), std::move(holes));
}

PlanarRegion load_planar_region(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open region file {}", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return planar_region_from_json(buffer.str());
}

}  // namespace weylkit
