#include "ofdr/pipeline.hpp"

#include <fstream>
#include <future>

#include "ofdr/error.hpp"

namespace ofdr {

namespace {

template <class F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  } catch (const std::filesystem::filesystem_error& e) {
    throw StageError(name, Error(ErrorKind::Io, e.what()));
  }
}

}  // namespace

ModelFile calibrate(const std::vector<CalibrationSlot>& slots, double threshold_sigmas) {
  ModelFile f;
  f.model = fit_slots(slots);
  f.straight_threshold_ue = straight_threshold(slots, threshold_sigmas);
  return f;
}

ReconstructOptions reconstruct_options(const ToolkitConfig& config, const ModelFile& model) {
  ReconstructOptions o;
  if (config.recon.threshold_ue >= 0.0) {
    o.straight_threshold_ue = config.recon.threshold_ue;
  } else {
    o.straight_threshold_ue = model.straight_threshold_ue.value_or(0.0);
  }
  o.sign = config.recon.sign;
  o.scheme = config.recon.scheme;
  o.resample_spacing_mm = config.recon.spacing_mm;
  return o;
}

GroundTruth truth_for(const TrialSpec& trial, double spacing_mm) {
  return make_ground_truth(trial.kind, trial.radius_mm, trial.span_mm, spacing_mm, trial.straight_mm);
}

TrialResult run_trial(const Trial& trial, const ModelFile& model, const ToolkitConfig& config) {
  TrialResult r;
  r.truth = trial.truth;
  r.reconstruction = stage("reconstruct:" + trial.name, [&] {
    return reconstruct(model.model, trial.strain, reconstruct_options(config, model));
  });
  r.report = stage("evaluate:" + trial.name, [&] {
    return evaluate(r.reconstruction.shape, trial.truth, &r.reconstruction.curvature, &trial.strain);
  });
  r.report.name = trial.name;
  return r;
}

std::vector<TrialResult> run_trials(const std::vector<Trial>& trials, const ModelFile& model,
                                    const ToolkitConfig& config, bool parallel) {
  std::vector<TrialResult> out;
  out.reserve(trials.size());
  if (!parallel) {
    for (const auto& t : trials) out.push_back(run_trial(t, model, config));
    return out;
  }
  std::vector<std::future<TrialResult>> pending;
  pending.reserve(trials.size());
  for (const auto& t : trials) {
    pending.push_back(std::async(std::launch::async, [&t, &model, &config] { return run_trial(t, model, config); }));
  }
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

PipelineResult run_pipeline(const ToolkitConfig& config, const PipelineInputs& inputs, bool parallel) {
  PipelineResult result;
  if (inputs.model_path) {
    result.model = stage("load-model", [&] { return read_model(*inputs.model_path); });
    result.inputs_read.push_back(*inputs.model_path);
  } else if (inputs.calibration_manifest) {
    result.model = stage("calibrate", [&] {
      return calibrate(load_calibration_slots(*inputs.calibration_manifest), config.jig.threshold_sigmas);
    });
    result.inputs_read.push_back(*inputs.calibration_manifest);
    for (const auto& row : read_calibration_manifest(*inputs.calibration_manifest)) {
      result.inputs_read.push_back(inputs.calibration_manifest->parent_path() / row.strain_csv);
    }
  } else {
    throw StageError("calibrate", Error(ErrorKind::Config,
                                        "no calibration model (--model) and no calibration data "
                                        "(--calibration) were provided"));
  }

  std::vector<Trial> trials = stage("load-trials", [&] {
    std::vector<Trial> loaded;
    const auto base = inputs.trials_file.parent_path();
    for (const auto& spec : read_trials(inputs.trials_file)) {
      Trial t;
      t.name = spec.name;
      t.strain = read_strain_csv(base / spec.strain_csv);
      t.truth = truth_for(spec, config.sensor.resolution_mm);
      result.inputs_read.push_back(base / spec.strain_csv);
      loaded.push_back(std::move(t));
    }
    return loaded;
  });
  result.inputs_read.push_back(inputs.trials_file);

  result.trials = run_trials(trials, result.model, config, parallel);
  return result;
}

std::vector<TrialSpec> jig_trial_specs() {
  std::vector<TrialSpec> specs;
  const double radii[] = {100.0, 80.0, 60.0};
  for (int i = 0; i < 3; ++i) {
    specs.push_back({"C" + std::to_string(i + 1), ShapeKind::CShape, radii[i], 170.0, 0.0,
                     "C" + std::to_string(i + 1) + "_strain.csv"});
  }
  for (int i = 0; i < 3; ++i) {
    specs.push_back({"J" + std::to_string(i + 1), ShapeKind::JShape, radii[i], 150.0, kJStraightMm,
                     "J" + std::to_string(i + 1) + "_strain.csv"});
  }
  return specs;
}

SyntheticDataset write_synthetic_dataset(const std::filesystem::path& dir, const ToolkitConfig& config,
                                         const std::vector<TrialSpec>& trials) {
  std::filesystem::create_directories(dir);
  SyntheticDataset out{dir / "calibration.csv", dir / "trials.csv"};

  const auto slots = synth_calibration_dataset(config.jig.radii_mm, config.sensor,
                                               {config.jig.trials, config.jig.slot_length_mm});
  std::vector<ManifestRow> rows;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    for (std::size_t t = 0; t < slots[k].trials.size(); ++t) {
      const std::string name = "slot" + std::to_string(k) + "_trial" + std::to_string(t) + ".csv";
      StrainProfile p = slots[k].trials[t];
      p.meta.rate_hz = config.rate_hz;
      write_strain_csv(dir / name, p);
      rows.push_back({slots[k].radius_mm, name, config.jig.window_start_mm, config.jig.window_end_mm});
    }
  }
  write_calibration_manifest(out.calibration_manifest, rows);

  for (std::size_t i = 0; i < trials.size(); ++i) {
    SensorModel sensor = config.sensor;
    sensor.seed = config.sensor.seed + 1000 + i;
    StrainProfile p = strain_from_truth(truth_for(trials[i], sensor.resolution_mm), sensor);
    p.meta.rate_hz = config.rate_hz;
    p.meta.sensor_id = trials[i].name;
    write_strain_csv(dir / trials[i].strain_csv, p);
  }
  write_trials(out.trials_file, trials);
  return out;
}

std::vector<PlotSeries> overlay_series(const PlanarShape& recon, const GroundTruth& truth) {
  PlotSeries expected{"expected", truth.shape.points, "#444444", true};
  if (truth.shape.span() > recon.span()) {
    expected.points.clear();
    for (std::size_t i = 0; i < truth.shape.size() && truth.shape.arc_length[i] <= recon.span(); ++i) {
      expected.points.push_back(truth.shape.points[i]);
    }
    expected.points.push_back(truth.point_at(recon.span()));
  }
  return {expected, PlotSeries{"reconstructed", recon.points, "#d62728", false}};
}

void write_pipeline_outputs(const std::filesystem::path& dir, const PipelineResult& result,
                            const ToolkitConfig& config) {
  std::filesystem::create_directories(dir);
  write_model(dir / "model.txt", result.model);
  std::ofstream table(dir / "report.csv");
  if (!table) throw Error(ErrorKind::Io, "cannot write " + (dir / "report.csv").string());
  table << report_csv_header() << "\n";
  for (const auto& t : result.trials) {
    write_shape_csv(dir / (t.report.name + "_shape.csv"), t.reconstruction.shape);
    write_curvature_csv(dir / (t.report.name + "_curvature.csv"), t.reconstruction.curvature);
    if (config.output.svg) {
      write_svg(dir / (t.report.name + "_overlay.svg"), overlay_series(t.reconstruction.shape, t.truth),
                t.report.name);
    }
    table << report_csv_row(t.report) << "\n";
  }
}

}  // namespace ofdr
