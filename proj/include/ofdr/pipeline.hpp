#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ofdr/config.hpp"
#include "ofdr/csv_io.hpp"
#include "ofdr/error.hpp"
#include "ofdr/metrics.hpp"
#include "ofdr/reconstruction.hpp"
#include "ofdr/svg.hpp"
#include "ofdr/synthesis.hpp"

namespace ofdr {

// Error raised by a pipeline stage; the message is prefixed with the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(Preformatted{}, cause.kind(), "[" + stage + "] " + cause.what()), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

// Fit the model and straight threshold from jig slots.
ModelFile calibrate(const std::vector<CalibrationSlot>& slots, double threshold_sigmas = 3.0);

// Threshold precedence: explicit config value, then the model file, then 0.
ReconstructOptions reconstruct_options(const ToolkitConfig& config, const ModelFile& model);

GroundTruth truth_for(const TrialSpec& trial, double spacing_mm);

struct Trial {
  std::string name;
  GroundTruth truth;
  StrainProfile strain;
};

struct TrialResult {
  ErrorReport report;
  Reconstruction reconstruction;
  GroundTruth truth;
};

TrialResult run_trial(const Trial& trial, const ModelFile& model, const ToolkitConfig& config);

// Results come back in input order whether or not trials ran concurrently.
std::vector<TrialResult> run_trials(const std::vector<Trial>& trials, const ModelFile& model,
                                    const ToolkitConfig& config, bool parallel = false);

struct PipelineInputs {
  std::optional<std::filesystem::path> model_path;
  std::optional<std::filesystem::path> calibration_manifest;
  std::filesystem::path trials_file;
};

struct PipelineResult {
  ModelFile model;
  std::vector<TrialResult> trials;
  std::vector<std::filesystem::path> inputs_read;
};

// calibrate (unless a model is given) -> reconstruct -> evaluate per trial.
PipelineResult run_pipeline(const ToolkitConfig& config, const PipelineInputs& inputs,
                            bool parallel = false);

// Writes model.txt, per-trial shape CSV (+ overlay SVG when enabled) and
// report.csv into `dir`.
void write_pipeline_outputs(const std::filesystem::path& dir, const PipelineResult& result,
                            const ToolkitConfig& config);

// The six jig cases: C1-C3 (100/80/60 mm arcs over 170 mm) and J1-J3 (same
// radii after a 50 mm lead-in, 150 mm in the jig).
std::vector<TrialSpec> jig_trial_specs();

struct SyntheticDataset {
  std::filesystem::path calibration_manifest;
  std::filesystem::path trials_file;
};

// Simulated calibration slots (config.jig) and jig trials written as strain
// CSVs plus the manifest and trial list that `run_pipeline` reads.
SyntheticDataset write_synthetic_dataset(const std::filesystem::path& dir, const ToolkitConfig& config,
                                         const std::vector<TrialSpec>& trials = jig_trial_specs());

std::vector<PlotSeries> overlay_series(const PlanarShape& recon, const GroundTruth& truth);

}  // namespace ofdr
