#include "ofdr/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ofdr/error.hpp"

namespace ofdr {

PowerLawModel reported_model() {
  PowerLawModel m;
  m.a = 126099.3715;
  m.b = -0.97984;
  // Strain range spanned by the 60-100 mm jig slots under this model.
  m.fit_min_ue = std::pow(100.0 / m.a, 1.0 / m.b);
  m.fit_max_ue = std::pow(60.0 / m.a, 1.0 / m.b);
  m.points = 9;
  return m;
}

std::vector<double> default_jig_radii() { return {0, 100, 95, 90, 85, 80, 75, 70, 65, 60}; }

double slot_average_strain(const CalibrationSlot& slot) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& trial : slot.trials) {
    for (double e : trial.strains) sum += e;
    count += trial.strains.size();
  }
  if (slot.trials.empty() || count == 0) {
    throw Error(ErrorKind::InsufficientData,
                "calibration slot " + std::to_string(slot.radius_mm) + " mm has no samples");
  }
  return sum / static_cast<double>(count);
}

double slot_strain_stddev(const CalibrationSlot& slot) {
  const double mean = slot_average_strain(slot);
  double ss = 0.0;
  std::size_t count = 0;
  for (const auto& trial : slot.trials) {
    for (double e : trial.strains) ss += (e - mean) * (e - mean);
    count += trial.strains.size();
  }
  return count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
}

PowerLawModel fit_power_law(std::span<const StrainRadiusPoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "power-law fit needs at least 2 points, got " +
                                                 std::to_string(points.size()));
  }
  for (const auto& p : points) {
    if (!(p.strain_ue > 0.0) || !(p.radius_mm > 0.0) || !std::isfinite(p.strain_ue) ||
        !std::isfinite(p.radius_mm)) {
      throw Error(ErrorKind::InvalidPoint, "power-law point (" + std::to_string(p.strain_ue) +
                                               " ue, " + std::to_string(p.radius_mm) +
                                               " mm) must be positive and finite");
    }
  }

  const auto n = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += std::log(p.strain_ue);
    mean_y += std::log(p.radius_mm);
  }
  mean_x /= n;
  mean_y /= n;

  // Centered sums keep the normal equations well conditioned.
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(p.strain_ue) - mean_x;
    const double dy = std::log(p.radius_mm) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (sxx <= 0.0) {
    throw Error(ErrorKind::InsufficientData, "power-law fit needs at least 2 distinct strains");
  }

  PowerLawModel m;
  m.b = sxy / sxx;
  const double log_a = mean_y - m.b * mean_x;
  m.a = std::exp(log_a);
  m.points = points.size();

  auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                      [](const auto& l, const auto& r) { return l.strain_ue < r.strain_ue; });
  m.fit_min_ue = lo->strain_ue;
  m.fit_max_ue = hi->strain_ue;

  double ss = 0.0;
  for (const auto& p : points) {
    const double r = std::log(p.radius_mm) - (log_a + m.b * std::log(p.strain_ue));
    ss += r * r;
    m.max_abs_log_residual = std::max(m.max_abs_log_residual, std::abs(r));
  }
  m.rms_log_residual = std::sqrt(ss / n);
  return m;
}

PowerLawModel fit_slots(std::span<const CalibrationSlot> slots) {
  std::vector<StrainRadiusPoint> points;
  for (const auto& slot : slots) {
    if (slot.straight()) continue;
    points.push_back({slot_average_strain(slot), slot.radius_mm});
  }
  return fit_power_law(points);
}

double straight_threshold(std::span<const CalibrationSlot> slots, double sigmas) {
  for (const auto& slot : slots) {
    if (slot.straight()) return sigmas * slot_strain_stddev(slot);
  }
  return 0.0;
}

RadiusEstimate strain_to_radius(const PowerLawModel& model, double strain_ue) {
  if (!(strain_ue > 0.0)) {
    throw Error(ErrorKind::Domain,
                "strain " + std::to_string(strain_ue) + " ue has no finite bend radius");
  }
  return {model.a * std::pow(strain_ue, model.b), !model.in_domain(strain_ue)};
}

double radius_to_strain(const PowerLawModel& model, double radius_mm) {
  if (!(radius_mm > 0.0)) {
    throw Error(ErrorKind::Domain, "radius " + std::to_string(radius_mm) + " mm must be > 0");
  }
  return std::pow(radius_mm / model.a, 1.0 / model.b);
}

StrainProfile extract_window(const StrainProfile& profile, double window_start_mm,
                             double window_end_mm) {
  if (window_end_mm <= window_start_mm) return profile;
  StrainProfile out;
  out.meta = profile.meta;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double s = profile.positions[i];
    if (s >= window_start_mm && s <= window_end_mm) {
      out.positions.push_back(s);
      out.strains.push_back(profile.strains[i]);
    }
  }
  return out;
}

}  // namespace ofdr
