#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ofdr/calibration.hpp"
#include "ofdr/metrics.hpp"
#include "ofdr/profile.hpp"

namespace ofdr {

// Strain CSV: header `s_mm,strain_ue`, one sample per row, `#` comments.
// Acquisition metadata travels in `# key = value` comment lines.
StrainProfile parse_strain_csv(std::istream& in, const std::string& origin = "<strain>");
StrainProfile read_strain_csv(const std::filesystem::path& path);
void write_strain_csv(std::ostream& out, const StrainProfile& profile);
void write_strain_csv(const std::filesystem::path& path, const StrainProfile& profile);

// Shape CSV: header `s_mm,x_mm,y_mm,theta_rad`.
PlanarShape parse_shape_csv(std::istream& in, const std::string& origin = "<shape>");
PlanarShape read_shape_csv(const std::filesystem::path& path);
void write_shape_csv(std::ostream& out, const PlanarShape& shape);
void write_shape_csv(const std::filesystem::path& path, const PlanarShape& shape);

// Curvature CSV: `s_mm,kappa_per_mm,kappa_per_m`.
void write_curvature_csv(std::ostream& out, const CurvatureProfile& curv);
void write_curvature_csv(const std::filesystem::path& path, const CurvatureProfile& curv);

// Calibrated model plus the straight-sensor threshold derived with it.
struct ModelFile {
  PowerLawModel model;
  std::optional<double> straight_threshold_ue;
};

void write_model(std::ostream& out, const ModelFile& file);
void write_model(const std::filesystem::path& path, const ModelFile& file);
ModelFile parse_model(std::istream& in, const std::string& origin = "<model>");
ModelFile read_model(const std::filesystem::path& path);

// Calibration manifest CSV: `radius_mm,strain_csv,window_start_mm,window_end_mm`,
// one row per trial; strain paths are relative to the manifest. Rows with the
// same radius become trials of one slot, in first-appearance order.
struct ManifestRow {
  double radius_mm = 0.0;
  std::string strain_csv;
  double window_start_mm = 0.0;
  double window_end_mm = 0.0;
};

std::vector<ManifestRow> read_calibration_manifest(const std::filesystem::path& path);
void write_calibration_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);
std::vector<CalibrationSlot> load_calibration_slots(const std::filesystem::path& manifest);

// Trial list CSV for the pipeline: `name,kind,radius_mm,span_mm,straight_mm,strain_csv`.
struct TrialSpec {
  std::string name;
  ShapeKind kind = ShapeKind::CShape;
  double radius_mm = 0.0;
  double span_mm = 0.0;
  double straight_mm = kJStraightMm;
  std::string strain_csv;
};

std::vector<TrialSpec> read_trials(const std::filesystem::path& path);
void write_trials(const std::filesystem::path& path, const std::vector<TrialSpec>& trials);

void write_report_kv(std::ostream& out, const ErrorReport& report);
std::string report_csv_header();
std::string report_csv_row(const ErrorReport& report);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace ofdr
