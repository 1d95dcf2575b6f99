#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ofdr/beam_design.hpp"
#include "ofdr/metrics.hpp"
#include "ofdr/reconstruction.hpp"
#include "ofdr/synthesis.hpp"

namespace ofdr {

// Environment variable naming the config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "OFDR_CONFIG";

struct JigConfig {
  std::vector<double> radii_mm = default_jig_radii();
  std::size_t trials = 3;
  double slot_length_mm = 100.0;
  double window_start_mm = 0.0;
  double window_end_mm = 0.0;  // <= start means the whole trial
  double threshold_sigmas = 3.0;
};

struct ExperimentConfig {
  ShapeKind kind = ShapeKind::CShape;
  double radius_mm = 100.0;
  double span_mm = 170.0;
  double straight_mm = kJStraightMm;
};

struct ReconConfig {
  double threshold_ue = -1.0;  // < 0: derive from the straight calibration slot
  int sign = 1;
  Scheme scheme = Scheme::Midpoint;
  double spacing_mm = 0.0;  // 0: keep the interrogator grid
};

struct OutputConfig {
  std::string dir = "out";
  bool svg = true;
};

struct ToolkitConfig {
  FiberSpec fiber;
  WireSpec wire;
  ChannelSpec channel;
  DesignSweep sweep;
  SensorModel sensor;
  double rate_hz = 62.5;
  JigConfig jig;
  ExperimentConfig experiment;
  ReconConfig recon;
  OutputConfig output;
};

// Plain-text `key = value` lines; `#` starts a comment. Keys absent from the
// text keep their defaults; unknown keys are rejected.
ToolkitConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ToolkitConfig load_config(const std::filesystem::path& path);

// Canonical form listing every key in a fixed order.
std::string serialize_config(const ToolkitConfig& config);

// SHA-256 (hex) of the canonical form.
std::string config_hash(const ToolkitConfig& config);

// Formats with 15 significant digits, the precision all toolkit text files use.
std::string format_number(double value);

std::string sha256_hex(const std::string& bytes);

}  // namespace ofdr
