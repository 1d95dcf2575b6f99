#pragma once

#include "ofdr/calibration.hpp"
#include "ofdr/profile.hpp"

namespace ofdr {

enum class Scheme {
  Midpoint,  // heading at the middle of each step (second order)
  Euler,     // heading at the start of each step
};

Scheme parse_scheme(const std::string& name);
const char* to_string(Scheme scheme);

// kappa_i = sign / radius(strain_i) where strain_i > threshold, else 0.
CurvatureProfile strains_to_curvatures(const PowerLawModel& model, const StrainProfile& profile,
                                       double straight_threshold_ue, int sign = +1);

// Planar dead reckoning over the gauge cells of `curv`. Each cell advances the
// heading by kappa*ds and moves the point by ds along the chosen heading, so
// the result has size()+1 points.
PlanarShape integrate_shape(const CurvatureProfile& curv, const Pose& initial = {},
                            Scheme scheme = Scheme::Midpoint);

// Linear interpolation onto a uniform grid from the first to the last sample.
// The interval count is round(span / spacing), so the realized spacing is
// the nearest value that lands exactly on both endpoints.
StrainProfile resample_profile(const StrainProfile& profile, double spacing_mm);

}  // namespace ofdr

namespace ofdr {

struct ReconstructOptions {
  double straight_threshold_ue = 0.0;
  int sign = 1;
  Scheme scheme = Scheme::Midpoint;
  double resample_spacing_mm = 0.0;  // 0 keeps the input grid
  Pose initial;
};

struct Reconstruction {
  StrainProfile strain;  // after optional resampling
  CurvatureProfile curvature;
  PlanarShape shape;
};

// Strain -> curvature -> shape in one call.
Reconstruction reconstruct(const PowerLawModel& model, const StrainProfile& profile,
                           const ReconstructOptions& options = {});

}  // namespace ofdr
