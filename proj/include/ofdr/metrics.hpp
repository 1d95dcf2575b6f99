#pragma once

#include <optional>
#include <string>

#include "ofdr/profile.hpp"

namespace ofdr {

enum class ShapeKind { CShape, JShape, Custom };

ShapeKind parse_shape_kind(const std::string& name);
const char* to_string(ShapeKind kind);

// Straight lead-in of the J jig.
inline constexpr double kJStraightMm = 50.0;

// Expected sensor shape in a jig. Starts at the origin with heading 0 and
// bends toward +y. C and J kinds are evaluated in closed form; custom truths
// interpolate their sampled shape.
struct GroundTruth {
  ShapeKind kind = ShapeKind::CShape;
  double radius_mm = 0.0;
  double straight_mm = 0.0;
  double total_length_mm = 0.0;
  PlanarShape shape;
  bool wraps = false;  // arc portion longer than a full circle

  Vec2 point_at(double s) const;
  double heading_at(double s) const;
  // Average curvature over [s0, s1], i.e. heading change / length.
  double mean_curvature(double s0, double s1) const;
};

GroundTruth make_ground_truth(ShapeKind kind, double radius_mm, double total_length_mm,
                              double spacing_mm, double straight_mm = kJStraightMm);

// Wrap a measured or hand-built polyline as ground truth.
GroundTruth custom_ground_truth(PlanarShape shape);

struct MetricOptions {
  // Comparison grid spacing; 0 uses the reconstruction's mean point spacing.
  double spacing_mm = 0.0;
  // Allowed shortfall of the truth span relative to the reconstruction.
  double span_tolerance_mm = 1e-6;
};

// Points of both curves at matching arc lengths on a uniform grid covering
// the reconstruction's span; truth beyond that span is ignored.
struct CurvePairing {
  std::vector<Vec2> recon;
  std::vector<Vec2> truth;
  double spacing_mm = 0.0;
};

CurvePairing pair_curves(const PlanarShape& recon, const GroundTruth& truth,
                         const MetricOptions& options = {});

double tip_position_error(const PlanarShape& recon, const GroundTruth& truth,
                          const MetricOptions& options = {});
double shape_error(const PlanarShape& recon, const GroundTruth& truth,
                   const MetricOptions& options = {});

struct AreaError {
  double avg_mm2 = 0.0;
  double total_mm2 = 0.0;
  std::size_t segments = 0;
};

// Shoelace area of each quad (recon_i, recon_i+1, truth_i+1, truth_i).
AreaError area_error(const PlanarShape& recon, const GroundTruth& truth,
                     const MetricOptions& options = {});

struct ArcWindow {
  double start_mm = 0.0;
  double end_mm = 0.0;
};

// Mean of 1/|kappa| over nonzero-curvature samples positioned inside the window.
double average_radius(const CurvatureProfile& curv, ArcWindow window);

// Window of `curv` that lies on the curved part of `truth`: everything for
// C shapes, the samples past the straight lead-in for J shapes.
ArcWindow curved_window(const CurvatureProfile& curv, const GroundTruth& truth);

struct ErrorReport {
  std::string name;
  double tip_error_mm = 0.0;
  double shape_error_mm = 0.0;
  double area_error_avg_mm2 = 0.0;
  double area_error_total_mm2 = 0.0;
  std::optional<double> average_radius_mm;
  std::optional<double> average_strain_ue;
};

ErrorReport evaluate(const PlanarShape& recon, const GroundTruth& truth,
                     const CurvatureProfile* curv = nullptr, const StrainProfile* strain = nullptr,
                     const MetricOptions& options = {});

}  // namespace ofdr
