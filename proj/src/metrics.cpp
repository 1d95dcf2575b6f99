#include "ofdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ofdr/error.hpp"

namespace ofdr {

ShapeKind parse_shape_kind(const std::string& name) {
  if (name == "c_shape" || name == "c") return ShapeKind::CShape;
  if (name == "j_shape" || name == "j") return ShapeKind::JShape;
  if (name == "custom") return ShapeKind::Custom;
  throw Error(ErrorKind::Config, "unknown shape kind '" + name + "' (c_shape|j_shape|custom)");
}

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::CShape: return "c_shape";
    case ShapeKind::JShape: return "j_shape";
    case ShapeKind::Custom: return "custom";
  }
  return "custom";
}

Vec2 GroundTruth::point_at(double s) const {
  if (kind == ShapeKind::Custom) return shape.point_at(s);
  const double lead = kind == ShapeKind::JShape ? straight_mm : 0.0;
  if (s <= lead) return {s, 0.0};
  const double phi = (s - lead) / radius_mm;
  return {lead + radius_mm * std::sin(phi), radius_mm * (1.0 - std::cos(phi))};
}

double GroundTruth::heading_at(double s) const {
  if (kind != ShapeKind::Custom) {
    const double lead = kind == ShapeKind::JShape ? straight_mm : 0.0;
    return std::max(0.0, s - lead) / radius_mm;
  }
  const auto& arc = shape.arc_length;
  if (shape.headings.size() == shape.size() && !arc.empty()) {
    if (s <= arc.front()) return shape.headings.front();
    if (s >= arc.back()) return shape.headings.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(arc.begin(), arc.end(), s) - arc.begin());
    const std::size_t lo = hi - 1;
    const double t = (s - arc[lo]) / (arc[hi] - arc[lo]);
    return shape.headings[lo] + t * (shape.headings[hi] - shape.headings[lo]);
  }
  throw Error(ErrorKind::InsufficientData, "custom ground truth has no headings");
}

double GroundTruth::mean_curvature(double s0, double s1) const {
  if (!(s1 > s0)) return 0.0;
  return (heading_at(s1) - heading_at(s0)) / (s1 - s0);
}

GroundTruth make_ground_truth(ShapeKind kind, double radius_mm, double total_length_mm,
                              double spacing_mm, double straight_mm) {
  if (kind == ShapeKind::Custom) {
    throw Error(ErrorKind::InvalidSpec, "custom truths are built from a shape, not parameters");
  }
  if (!(radius_mm > 0.0)) throw Error(ErrorKind::InvalidSpec, "ground-truth radius must be > 0 mm");
  if (!(total_length_mm > 0.0)) throw Error(ErrorKind::InvalidSpec, "ground-truth length must be > 0 mm");
  if (!(spacing_mm > 0.0)) throw Error(ErrorKind::InvalidSpec, "ground-truth spacing must be > 0 mm");
  if (kind == ShapeKind::JShape && !(total_length_mm > straight_mm)) {
    throw Error(ErrorKind::InvalidSpec, "J-shape length must exceed its straight lead-in");
  }

  GroundTruth t;
  t.kind = kind;
  t.radius_mm = radius_mm;
  t.straight_mm = kind == ShapeKind::JShape ? straight_mm : 0.0;
  t.total_length_mm = total_length_mm;
  t.wraps = total_length_mm - t.straight_mm > 2.0 * std::numbers::pi * radius_mm;

  const auto intervals =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(total_length_mm / spacing_mm)));
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double s = total_length_mm * static_cast<double>(k) / static_cast<double>(intervals);
    t.shape.points.push_back(t.point_at(s));
    t.shape.headings.push_back(t.heading_at(s));
    t.shape.arc_length.push_back(s);
  }
  return t;
}

GroundTruth custom_ground_truth(PlanarShape shape) {
  if (shape.size() < 2) throw Error(ErrorKind::InsufficientData, "custom truth needs >= 2 points");
  if (shape.arc_length.size() != shape.size()) {
    shape.arc_length.assign(1, 0.0);
    for (std::size_t i = 1; i < shape.size(); ++i) {
      shape.arc_length.push_back(shape.arc_length.back() + distance(shape.points[i - 1], shape.points[i]));
    }
  }
  if (shape.headings.size() != shape.size()) {
    shape.headings.clear();
    for (std::size_t i = 0; i + 1 < shape.size(); ++i) {
      const Vec2 d = shape.points[i + 1] - shape.points[i];
      shape.headings.push_back(std::atan2(d.y, d.x));
    }
    shape.headings.push_back(shape.headings.back());
  }
  GroundTruth t;
  t.kind = ShapeKind::Custom;
  t.total_length_mm = shape.span();
  t.shape = std::move(shape);
  return t;
}

CurvePairing pair_curves(const PlanarShape& recon, const GroundTruth& truth,
                         const MetricOptions& options) {
  if (recon.size() < 2) throw Error(ErrorKind::InsufficientData, "reconstruction needs >= 2 points");
  const double span = recon.span();
  if (truth.total_length_mm < span - options.span_tolerance_mm) {
    throw Error(ErrorKind::SpanMismatch, "truth covers " + std::to_string(truth.total_length_mm) +
                                             " mm but reconstruction spans " + std::to_string(span) + " mm");
  }
  const double h = options.spacing_mm > 0.0 ? options.spacing_mm
                                            : span / static_cast<double>(recon.size() - 1);
  const auto intervals = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(span / h)));

  CurvePairing pair;
  pair.spacing_mm = span / static_cast<double>(intervals);
  pair.recon.reserve(intervals + 1);
  pair.truth.reserve(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double s = k == intervals ? span : static_cast<double>(k) * pair.spacing_mm;
    pair.recon.push_back(recon.point_at(s));
    pair.truth.push_back(truth.point_at(s));
  }
  return pair;
}

double tip_position_error(const PlanarShape& recon, const GroundTruth& truth,
                          const MetricOptions& options) {
  const CurvePairing pair = pair_curves(recon, truth, options);
  return distance(pair.recon.back(), pair.truth.back());
}

double shape_error(const PlanarShape& recon, const GroundTruth& truth, const MetricOptions& options) {
  const CurvePairing pair = pair_curves(recon, truth, options);
  double sum = 0.0;
  for (std::size_t i = 0; i < pair.recon.size(); ++i) sum += distance(pair.recon[i], pair.truth[i]);
  return sum / static_cast<double>(pair.recon.size());
}

namespace {

double quad_area(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double twice = (a.x * b.y - b.x * a.y) + (b.x * c.y - c.x * b.y) +
                       (c.x * d.y - d.x * c.y) + (d.x * a.y - a.x * d.y);
  return 0.5 * std::abs(twice);
}

}  // namespace

AreaError area_error(const PlanarShape& recon, const GroundTruth& truth, const MetricOptions& options) {
  const CurvePairing pair = pair_curves(recon, truth, options);
  AreaError out;
  out.segments = pair.recon.size() - 1;
  for (std::size_t i = 0; i < out.segments; ++i) {
    out.total_mm2 += quad_area(pair.recon[i], pair.recon[i + 1], pair.truth[i + 1], pair.truth[i]);
  }
  out.avg_mm2 = out.total_mm2 / static_cast<double>(out.segments);
  return out;
}

double average_radius(const CurvatureProfile& curv, ArcWindow window) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < curv.size(); ++i) {
    const double s = curv.positions[i];
    if (s < window.start_mm || s > window.end_mm || curv.curvatures[i] == 0.0) continue;
    sum += 1.0 / std::abs(curv.curvatures[i]);
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorKind::UndefinedRadius, "no curved samples in [" + std::to_string(window.start_mm) +
                                                ", " + std::to_string(window.end_mm) + "] mm");
  }
  return sum / static_cast<double>(count);
}

ArcWindow curved_window(const CurvatureProfile& curv, const GroundTruth& truth) {
  if (curv.size() == 0) return {};
  if (curv.size() < 2) return {curv.positions.front(), curv.positions.back()};
  const auto edges = cell_edges(curv.positions);
  const double start = edges.front();
  const double end = curv.positions.back();
  // Skip the cell that straddles the end of the lead-in.
  if (truth.kind == ShapeKind::JShape) return {start + truth.straight_mm + 0.5 * (edges[1] - edges[0]), end};
  return {start, end};
}

ErrorReport evaluate(const PlanarShape& recon, const GroundTruth& truth, const CurvatureProfile* curv,
                     const StrainProfile* strain, const MetricOptions& options) {
  const CurvePairing pair = pair_curves(recon, truth, options);
  ErrorReport r;
  r.tip_error_mm = distance(pair.recon.back(), pair.truth.back());
  double sum = 0.0;
  for (std::size_t i = 0; i < pair.recon.size(); ++i) sum += distance(pair.recon[i], pair.truth[i]);
  r.shape_error_mm = sum / static_cast<double>(pair.recon.size());
  const AreaError area = area_error(recon, truth, options);
  r.area_error_avg_mm2 = area.avg_mm2;
  r.area_error_total_mm2 = area.total_mm2;
  if (curv != nullptr) {
    try {
      r.average_radius_mm = average_radius(*curv, curved_window(*curv, truth));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UndefinedRadius) throw;
    }
  }
  if (strain != nullptr && !strain->empty()) {
    double total = 0.0;
    for (double e : strain->strains) total += e;
    r.average_strain_ue = total / static_cast<double>(strain->size());
  }
  return r;
}

}  // namespace ofdr
