#include "ofdr/beam_design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ofdr/error.hpp"

namespace ofdr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidSpec, what);
}

// Inclusive grid lo, lo+step, ... <= hi (within rounding). Empty when hi < lo.
std::vector<double> sweep_axis(double lo, double hi, double step) {
  std::vector<double> values;
  if (hi < lo) return values;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  return values;
}

}  // namespace

void FiberSpec::validate() const {
  require(std::isfinite(radius_mm) && radius_mm > 0.0, "fiber radius must be > 0 mm");
  require(std::isfinite(modulus_gpa) && modulus_gpa > 0.0, "fiber modulus must be > 0 GPa");
  require(std::isfinite(max_strain) && max_strain > 0.0 && max_strain < 1.0,
          "fiber max strain must lie in (0, 1)");
}

double FiberSpec::area_mm2() const { return std::numbers::pi * radius_mm * radius_mm; }

void WireSpec::validate() const {
  require(std::isfinite(width_mm) && width_mm > 0.0, "wire width must be > 0 mm");
  require(std::isfinite(height_mm) && height_mm >= 0.0, "wire height must be >= 0 mm");
  require(std::isfinite(modulus_gpa) && modulus_gpa > 0.0, "wire modulus must be > 0 GPa");
}

double neutral_plane(const WireSpec& wire, const FiberSpec& fiber) {
  wire.validate();
  fiber.validate();

  const double n_wire = wire.modulus_gpa / fiber.modulus_gpa;
  const double weighted_wire = n_wire * wire.area_mm2();
  const double weighted_fiber = fiber.area_mm2();

  const double y_wire = wire.height_mm / 2.0;
  const double y_fiber = wire.height_mm + fiber.radius_mm;

  return (weighted_wire * y_wire + weighted_fiber * y_fiber) / (weighted_wire + weighted_fiber);
}

double sensor_bias(const SSAGeometry& geometry) {
  return geometry.fiber_centroid_mm() - geometry.neutral_plane_mm;
}

double min_bend_radius(const FiberSpec& fiber, double bias_mm) {
  require(fiber.max_strain > 0.0, "fiber max strain must be > 0");
  require(bias_mm >= 0.0, "bias must be >= 0 mm");
  return std::max(fiber.radius_mm, bias_mm) / fiber.max_strain;
}

SSAGeometry make_geometry(const FiberSpec& fiber, const WireSpec& wire) {
  SSAGeometry g;
  g.fiber = fiber;
  g.wire = wire;
  g.neutral_plane_mm = neutral_plane(wire, fiber);
  // Clamp rounding noise in the single-body limit (wire height 0).
  g.bias_mm = std::max(0.0, sensor_bias(g));
  g.min_bend_radius_mm = min_bend_radius(fiber, g.bias_mm);
  return g;
}

bool fits_channel(const WireSpec& wire, const FiberSpec& fiber, const ChannelSpec& channel) {
  return wire.width_mm <= channel.width_mm + 1e-12 &&
         wire.height_mm + 2.0 * fiber.radius_mm <= channel.height_mm + 1e-12;
}

std::vector<DesignCandidate> design_search(const FiberSpec& fiber, const WireSpec& wire_material,
                                           const DesignSweep& sweep) {
  fiber.validate();
  require(std::isfinite(sweep.step_mm) && sweep.step_mm > 0.0, "sweep step must be > 0 mm");
  require(sweep.width_min_mm > 0.0, "sweep widths must be > 0 mm");
  require(sweep.height_min_mm >= 0.0, "sweep heights must be >= 0 mm");

  const auto widths = sweep_axis(sweep.width_min_mm, sweep.width_max_mm, sweep.step_mm);
  const auto heights = sweep_axis(sweep.height_min_mm, sweep.height_max_mm, sweep.step_mm);

  std::vector<DesignCandidate> out;
  out.reserve(widths.size() * heights.size());
  for (double w : widths) {
    for (double h : heights) {
      WireSpec wire{w, h, wire_material.modulus_gpa};
      const SSAGeometry g = make_geometry(fiber, wire);
      out.push_back({wire, g.bias_mm, g.min_bend_radius_mm, fits_channel(wire, fiber, sweep.channel)});
    }
  }

  std::sort(out.begin(), out.end(), [](const DesignCandidate& a, const DesignCandidate& b) {
    if (a.bias_mm != b.bias_mm) return a.bias_mm > b.bias_mm;
    const double area_a = a.wire.area_mm2();
    const double area_b = b.wire.area_mm2();
    if (area_a != area_b) return area_a < area_b;
    if (a.wire.width_mm != b.wire.width_mm) return a.wire.width_mm < b.wire.width_mm;
    return a.wire.height_mm < b.wire.height_mm;
  });
  return out;
}

}  // namespace ofdr
