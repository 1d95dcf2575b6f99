#include "ofdr/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ofdr/error.hpp"

namespace ofdr {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double distance(Vec2 a, Vec2 b) { return norm(a - b); }

void StrainProfile::validate() const {
  if (positions.empty() || positions.size() != strains.size()) {
    throw Error(ErrorKind::InsufficientData,
                "strain profile needs equal, non-zero position/strain counts (" +
                    std::to_string(positions.size()) + " vs " + std::to_string(strains.size()) + ")");
  }
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (!(positions[i] > positions[i - 1])) {
      throw Error(ErrorKind::InvalidSpec,
                  "strain profile positions must be strictly increasing at index " + std::to_string(i));
    }
  }
}

Vec2 PlanarShape::point_at(double s) const {
  if (points.empty()) throw Error(ErrorKind::InsufficientData, "empty shape");
  if (s <= arc_length.front()) return points.front();
  if (s >= arc_length.back()) return points.back();
  const auto it = std::upper_bound(arc_length.begin(), arc_length.end(), s);
  const auto hi = static_cast<std::size_t>(it - arc_length.begin());
  const std::size_t lo = hi - 1;
  const double t = (s - arc_length[lo]) / (arc_length[hi] - arc_length[lo]);
  return points[lo] + t * (points[hi] - points[lo]);
}

std::vector<double> cell_edges(const std::vector<double>& positions) {
  const std::size_t n = positions.size();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData, "at least 2 samples are needed to size gauge cells");
  }
  std::vector<double> edges(n + 1);
  for (std::size_t i = 1; i < n; ++i) edges[i] = 0.5 * (positions[i - 1] + positions[i]);
  edges[0] = positions[0] - (edges[1] - positions[0]);
  edges[n] = positions[n - 1] + (positions[n - 1] - edges[n - 1]);
  return edges;
}

Scheme parse_scheme(const std::string& name) {
  if (name == "midpoint") return Scheme::Midpoint;
  if (name == "euler") return Scheme::Euler;
  throw Error(ErrorKind::Config, "unknown integration scheme '" + name + "' (midpoint|euler)");
}

const char* to_string(Scheme scheme) {
  return scheme == Scheme::Midpoint ? "midpoint" : "euler";
}

CurvatureProfile strains_to_curvatures(const PowerLawModel& model, const StrainProfile& profile,
                                       double straight_threshold_ue, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::Config, "bending sign must be +1 or -1");
  if (!(straight_threshold_ue >= 0.0)) {
    throw Error(ErrorKind::Config, "straight threshold must be >= 0 ue");
  }
  CurvatureProfile out;
  out.positions = profile.positions;
  out.curvatures.resize(profile.size(), 0.0);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double e = profile.strains[i];
    if (e > straight_threshold_ue && e > 0.0) {
      out.curvatures[i] = static_cast<double>(sign) / strain_to_radius(model, e).radius_mm;
    }
  }
  return out;
}

PlanarShape integrate_shape(const CurvatureProfile& curv, const Pose& initial, Scheme scheme) {
  if (curv.positions.size() != curv.curvatures.size()) {
    throw Error(ErrorKind::InsufficientData, "curvature profile has mismatched lengths");
  }
  const std::vector<double> edges = cell_edges(curv.positions);
  const std::size_t n = curv.size();

  PlanarShape shape;
  shape.points.reserve(n + 1);
  shape.headings.reserve(n + 1);
  shape.arc_length.reserve(n + 1);

  Vec2 p{initial.x, initial.y};
  double theta = initial.theta;
  double s = 0.0;
  shape.points.push_back(p);
  shape.headings.push_back(theta);
  shape.arc_length.push_back(s);

  for (std::size_t i = 0; i < n; ++i) {
    const double ds = edges[i + 1] - edges[i];
    if (!(ds > 0.0)) {
      throw Error(ErrorKind::InvalidSpec, "curvature positions must be strictly increasing");
    }
    const double dtheta = curv.curvatures[i] * ds;
    const double step_heading = scheme == Scheme::Midpoint ? theta + 0.5 * dtheta : theta;
    p = p + ds * Vec2{std::cos(step_heading), std::sin(step_heading)};
    theta += dtheta;
    s += ds;
    shape.points.push_back(p);
    shape.headings.push_back(theta);
    shape.arc_length.push_back(s);
  }
  return shape;
}

StrainProfile resample_profile(const StrainProfile& profile, double spacing_mm) {
  profile.validate();
  if (!(spacing_mm > 0.0)) throw Error(ErrorKind::Config, "resample spacing must be > 0 mm");
  const double s0 = profile.positions.front();
  const double s1 = profile.positions.back();
  const double span = s1 - s0;
  if (spacing_mm > span) {
    throw Error(ErrorKind::InsufficientData, "resample spacing " + std::to_string(spacing_mm) +
                                                 " mm exceeds profile span " + std::to_string(span) + " mm");
  }
  const auto intervals = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(span / spacing_mm)));
  const double h = span / static_cast<double>(intervals);

  StrainProfile out;
  out.meta = profile.meta;
  out.positions.resize(intervals + 1);
  out.strains.resize(intervals + 1);
  std::size_t j = 0;
  for (std::size_t k = 0; k <= intervals; ++k) {
    const double s = k == intervals ? s1 : s0 + static_cast<double>(k) * h;
    while (j + 2 < profile.size() && profile.positions[j + 1] < s) ++j;
    const double sa = profile.positions[j], sb = profile.positions[j + 1];
    const double t = std::clamp((s - sa) / (sb - sa), 0.0, 1.0);
    out.positions[k] = s;
    out.strains[k] = profile.strains[j] + t * (profile.strains[j + 1] - profile.strains[j]);
  }
  out.strains.front() = profile.strains.front();
  out.strains.back() = profile.strains.back();
  return out;
}

}  // namespace ofdr

namespace ofdr {

Reconstruction reconstruct(const PowerLawModel& model, const StrainProfile& profile,
                           const ReconstructOptions& options) {
  profile.validate();
  Reconstruction r;
  r.strain = options.resample_spacing_mm > 0.0 ? resample_profile(profile, options.resample_spacing_mm)
                                               : profile;
  r.curvature = strains_to_curvatures(model, r.strain, options.straight_threshold_ue, options.sign);
  r.shape = integrate_shape(r.curvature, options.initial, options.scheme);
  return r;
}

}  // namespace ofdr
