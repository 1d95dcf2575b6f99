#pragma once

#include <vector>

namespace ofdr {

// Sensor assembly: one optical fiber bonded centered on top of a flat wire.
// Lengths in mm, moduli in GPa, strains as fractions.

struct FiberSpec {
  double radius_mm = 0.0775;
  double modulus_gpa = 4.81;
  double max_strain = 0.01;

  void validate() const;
  double area_mm2() const;
};

struct WireSpec {
  double width_mm = 0.813;
  double height_mm = 0.152;
  double modulus_gpa = 75.0;

  void validate() const;
  double area_mm2() const { return width_mm * height_mm; }
};

struct ChannelSpec {
  double width_mm = 1.2;
  double height_mm = 0.6;
};

// Heights are measured from the bottom face of the wire.
struct SSAGeometry {
  FiberSpec fiber;
  WireSpec wire;
  double neutral_plane_mm = 0.0;
  double bias_mm = 0.0;
  double min_bend_radius_mm = 0.0;

  double fiber_centroid_mm() const { return wire.height_mm + fiber.radius_mm; }
  double wire_centroid_mm() const { return wire.height_mm / 2.0; }
};

// Bias the original authors report for their wire. It is not reproduced by the
// transformed-section formula and is kept only as a labeled reference.
inline constexpr double kReportedBiasMm = 0.079;

// Neutral plane height of the fiber/wire composite section, using
// modulus-weighted (transformed) areas with the fiber as reference material.
double neutral_plane(const WireSpec& wire, const FiberSpec& fiber);

// Distance from the fiber centroid to the neutral plane.
double sensor_bias(const SSAGeometry& geometry);

// Tightest bend radius the assembly tolerates before the fiber exceeds its
// strain limit: max(fiber radius, bias) / max_strain.
double min_bend_radius(const FiberSpec& fiber, double bias_mm);

SSAGeometry make_geometry(const FiberSpec& fiber, const WireSpec& wire);

struct DesignCandidate {
  WireSpec wire;
  double bias_mm = 0.0;
  double min_bend_radius_mm = 0.0;
  bool fits_channel = false;
};

struct DesignSweep {
  double width_min_mm = 0.5;
  double width_max_mm = 1.0;
  double height_min_mm = 0.0;
  double height_max_mm = 0.5;
  double step_mm = 0.001;
  ChannelSpec channel;
};

bool fits_channel(const WireSpec& wire, const FiberSpec& fiber, const ChannelSpec& channel);

// Enumerate wire sizes on the sweep grid (wire modulus taken from
// `wire_material`), sorted by descending bias; ties go to the smaller wire.
std::vector<DesignCandidate> design_search(const FiberSpec& fiber, const WireSpec& wire_material,
                                           const DesignSweep& sweep);

}  // namespace ofdr
