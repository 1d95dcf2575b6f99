#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ofdr {

struct AcquisitionMeta {
  double rate_hz = 62.5;
  std::string sensor_id;
  double timestamp_s = 0.0;
};

// Distributed strain along the fiber. Each sample is the reading of one gauge
// cell centered at positions[i] (mm); strains in microstrain.
struct StrainProfile {
  std::vector<double> positions;
  std::vector<double> strains;
  AcquisitionMeta meta;

  std::size_t size() const { return positions.size(); }
  bool empty() const { return positions.empty(); }
  // Throws InsufficientData on empty/mismatched input, InvalidSpec when the
  // positions are not strictly increasing.
  void validate() const;
};

// Signed curvature (1/mm) on the grid of the source strain profile.
struct CurvatureProfile {
  std::vector<double> positions;
  std::vector<double> curvatures;

  std::size_t size() const { return positions.size(); }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
double norm(Vec2 v);
double distance(Vec2 a, Vec2 b);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Ordered planar polyline. arc_length[0] == 0 and arc_length[i] is the
// cumulative arc length at points[i].
struct PlanarShape {
  std::vector<Vec2> points;
  std::vector<double> headings;
  std::vector<double> arc_length;

  std::size_t size() const { return points.size(); }
  double span() const { return arc_length.empty() ? 0.0 : arc_length.back(); }
  // Linear interpolation along arc length; s is clamped to [0, span()].
  Vec2 point_at(double s) const;
};

// Gauge cell boundaries for a sample grid: midpoints between neighbouring
// samples, with the outer cells mirrored about the end samples. Returns
// size()+1 edges; needs at least two samples.
std::vector<double> cell_edges(const std::vector<double>& positions);

}  // namespace ofdr
