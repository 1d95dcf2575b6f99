#pragma once

#include <span>
#include <vector>

#include "ofdr/profile.hpp"

namespace ofdr {

// One jig slot: radius 0 marks the straight slot. Trials are already
// restricted to the in-slot arc-length window.
struct CalibrationSlot {
  double radius_mm = 0.0;
  std::vector<StrainProfile> trials;

  bool straight() const { return radius_mm == 0.0; }
};

// radius_mm = a * strain_ue^b
struct PowerLawModel {
  double a = 0.0;
  double b = 0.0;
  double fit_min_ue = 0.0;
  double fit_max_ue = 0.0;
  std::size_t points = 0;
  double rms_log_residual = 0.0;
  double max_abs_log_residual = 0.0;

  bool in_domain(double strain_ue) const {
    return strain_ue >= fit_min_ue && strain_ue <= fit_max_ue;
  }
};

// Model reported by the original calibration (unsigned microstrain -> mm).
PowerLawModel reported_model();

// Jig radii (mm) used for calibration; 0 is the straight slot.
std::vector<double> default_jig_radii();

struct StrainRadiusPoint {
  double strain_ue = 0.0;
  double radius_mm = 0.0;
};

struct RadiusEstimate {
  double radius_mm = 0.0;
  bool out_of_domain = false;
};

// Sample-weighted mean over every sample of every trial.
double slot_average_strain(const CalibrationSlot& slot);

// Sample standard deviation over the pooled samples of a slot.
double slot_strain_stddev(const CalibrationSlot& slot);

// Ordinary least squares on ln(radius) = ln(a) + b ln(strain).
PowerLawModel fit_power_law(std::span<const StrainRadiusPoint> points);

// Averages each curved slot and fits; the straight slot is skipped.
PowerLawModel fit_slots(std::span<const CalibrationSlot> slots);

// Noise floor below which the sensor is treated as straight:
// `sigmas` times the pooled stddev of the straight slot.
double straight_threshold(std::span<const CalibrationSlot> slots, double sigmas = 3.0);

RadiusEstimate strain_to_radius(const PowerLawModel& model, double strain_ue);
double radius_to_strain(const PowerLawModel& model, double radius_mm);

// Samples with window_start <= s <= window_end. An empty window
// (end <= start) returns the profile unchanged.
StrainProfile extract_window(const StrainProfile& profile, double window_start_mm,
                             double window_end_mm);

}  // namespace ofdr
