// Command-line front end: design, calibrate, reconstruct, evaluate, simulate, pipeline.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "ofdr/beam_design.hpp"
#include "ofdr/calibration.hpp"
#include "ofdr/config.hpp"
#include "ofdr/csv_io.hpp"
#include "ofdr/error.hpp"
#include "ofdr/manifest.hpp"
#include "ofdr/metrics.hpp"
#include "ofdr/pipeline.hpp"
#include "ofdr/reconstruction.hpp"
#include "ofdr/svg.hpp"
#include "ofdr/synthesis.hpp"

namespace fs = std::filesystem;
using namespace ofdr;

namespace {

struct Globals {
  std::string config_path;
  std::vector<std::string> argv;
};

ToolkitConfig load(const Globals& g) {
  if (!g.config_path.empty()) return load_config(g.config_path);
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') return load_config(env);
  return ToolkitConfig{};
}

void manifest(const fs::path& dir, const std::string& command, const Globals& g, const ToolkitConfig& cfg,
              const std::vector<fs::path>& inputs) {
  RunManifest m;
  m.command = command;
  m.argv = g.argv;
  m.config_hash = config_hash(cfg);
  m.config_text = serialize_config(cfg);
  for (const auto& p : inputs) m.inputs.push_back(digest_file(p));
  m.timestamp_utc = utc_timestamp();
  write_manifest(dir, m);
}

struct ShapeArgs {
  std::string kind = "c_shape";
  double radius = 100.0;
  double span = 170.0;
  double straight = kJStraightMm;
};

void add_shape_options(CLI::App* cmd, ShapeArgs& a) {
  cmd->add_option("--kind", a.kind, "c_shape | j_shape")->capture_default_str();
  cmd->add_option("--radius", a.radius, "arc radius (mm)")->capture_default_str();
  cmd->add_option("--span", a.span, "sensor span in the jig (mm)")->capture_default_str();
  cmd->add_option("--straight", a.straight, "J-shape lead-in (mm)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-fiber OFDR shape sensing toolkit"};
  app.require_subcommand(1);
  Globals g;
  g.argv.assign(argv, argv + argc);
  app.add_option("-c,--config", g.config_path,
                 std::string("config file (default: $") + kConfigEnvVar + ")");

  // design
  auto* design = app.add_subcommand("design", "sweep wire sizes and rank by sensor bias");
  std::string design_out;
  bool feasible_only = false;
  std::size_t top = 0;
  design->add_option("-o,--out", design_out, "CSV output file (default stdout)");
  design->add_flag("--feasible-only", feasible_only, "drop candidates that do not fit the channel");
  design->add_option("--top", top, "keep only the first N candidates");

  // calibrate
  auto* cal = app.add_subcommand("calibrate", "fit the strain-to-radius power law");
  std::string cal_manifest, cal_out = "calibration";
  cal->add_option("-m,--manifest", cal_manifest, "calibration manifest CSV")->required();
  cal->add_option("-o,--out", cal_out, "output directory")->capture_default_str();

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "strain profile -> planar shape");
  std::string rec_model, rec_strain, rec_out = "reconstruction", rec_scheme;
  std::optional<double> rec_spacing, rec_threshold;
  std::optional<int> rec_sign;
  rec->add_option("--model", rec_model, "model file from `calibrate`")->required();
  rec->add_option("--strain", rec_strain, "strain CSV")->required();
  rec->add_option("-o,--out", rec_out, "output directory")->capture_default_str();
  rec->add_option("--spacing", rec_spacing, "resample spacing (mm)");
  rec->add_option("--threshold", rec_threshold, "straight threshold (ue)");
  rec->add_option("--sign", rec_sign, "bending sign (+1|-1)");
  rec->add_option("--scheme", rec_scheme, "midpoint | euler");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "score a shape against the expected jig shape");
  std::string ev_shape, ev_truth, ev_strain, ev_model, ev_overlay, ev_name = "trial";
  ShapeArgs ev_args;
  ev->add_option("--shape", ev_shape, "reconstructed shape CSV")->required();
  ev->add_option("--truth", ev_truth, "expected shape CSV (instead of --kind/--radius)");
  add_shape_options(ev, ev_args);
  ev->add_option("--strain", ev_strain, "source strain CSV (adds average strain)");
  ev->add_option("--model", ev_model, "model file (with --strain, adds average radius)");
  ev->add_option("--emit-overlay", ev_overlay, "write an SVG overlay");
  ev->add_option("--name", ev_name, "trial name")->capture_default_str();

  // simulate
  auto* sim = app.add_subcommand("simulate", "synthesize interrogator strain");
  ShapeArgs sim_args;
  std::string sim_out = "simulated";
  std::size_t sim_frames = 1;
  std::optional<double> sim_rate, sim_noise, sim_bias;
  std::optional<std::uint64_t> sim_seed;
  bool jig_set = false;
  add_shape_options(sim, sim_args);
  sim->add_option("-o,--out", sim_out, "output directory")->capture_default_str();
  sim->add_option("--frames", sim_frames, "frames to emit")->capture_default_str();
  sim->add_option("--rate", sim_rate, "frame rate (Hz)");
  sim->add_option("--noise", sim_noise, "noise sigma (ue)");
  sim->add_option("--bias", sim_bias, "effective sensor bias (mm)");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_flag("--jig-set", jig_set, "write calibration slots and the six C/J jig trials");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "calibrate -> reconstruct -> evaluate");
  std::string pipe_trials, pipe_model, pipe_cal, pipe_out;
  bool parallel = false;
  std::optional<std::uint64_t> pipe_seed;
  pipe->add_option("--trials", pipe_trials, "trial list CSV")->required();
  pipe->add_option("--model", pipe_model, "model file (skips calibration)");
  pipe->add_option("--calibration", pipe_cal, "calibration manifest CSV");
  pipe->add_option("-o,--out", pipe_out, "output directory (default: output.dir)");
  pipe->add_option("--seed", pipe_seed, "recorded in the manifest; inputs are files");
  pipe->add_flag("--parallel", parallel, "evaluate trials concurrently");

  CLI11_PARSE(app, argc, argv);

  try {
    ToolkitConfig cfg = load(g);

    if (*design) {
      auto candidates = design_search(cfg.fiber, cfg.wire, cfg.sweep);
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!design_out.empty()) {
        file.open(design_out);
        if (!file) throw Error(ErrorKind::Io, "cannot write " + design_out);
        out = &file;
      }
      *out << "width_mm,height_mm,wire_modulus_gpa,bias_mm,min_bend_radius_mm,fits_channel\n";
      std::size_t written = 0;
      for (const auto& c : candidates) {
        if (feasible_only && !c.fits_channel) continue;
        if (top != 0 && written == top) break;
        *out << format_number(c.wire.width_mm) << "," << format_number(c.wire.height_mm) << ","
             << format_number(c.wire.modulus_gpa) << "," << format_number(c.bias_mm) << ","
             << format_number(c.min_bend_radius_mm) << "," << (c.fits_channel ? "true" : "false") << "\n";
        ++written;
      }
      const SSAGeometry chosen = make_geometry(cfg.fiber, cfg.wire);
      std::cerr << "configured wire " << format_number(cfg.wire.width_mm) << " x "
                << format_number(cfg.wire.height_mm) << " mm: neutral_plane_mm = "
                << format_number(chosen.neutral_plane_mm) << ", bias_mm = " << format_number(chosen.bias_mm)
                << ", min_bend_radius_mm = " << format_number(chosen.min_bend_radius_mm)
                << " (reported reference bias " << format_number(kReportedBiasMm) << " mm)\n";
      return 0;
    }

    if (*cal) {
      const auto slots = load_calibration_slots(cal_manifest);
      const ModelFile model = calibrate(slots, cfg.jig.threshold_sigmas);
      write_model(fs::path(cal_out) / "model.txt", model);
      std::vector<fs::path> inputs{cal_manifest};
      for (const auto& row : read_calibration_manifest(cal_manifest)) {
        inputs.push_back(fs::path(cal_manifest).parent_path() / row.strain_csv);
      }
      manifest(cal_out, "calibrate", g, cfg, inputs);
      write_model(std::cout, model);
      return 0;
    }

    if (*rec) {
      if (rec_spacing) cfg.recon.spacing_mm = *rec_spacing;
      if (rec_threshold) cfg.recon.threshold_ue = *rec_threshold;
      if (rec_sign) {
        if (*rec_sign != 1 && *rec_sign != -1) throw Error(ErrorKind::Config, "--sign must be 1 or -1");
        cfg.recon.sign = *rec_sign;
      }
      if (!rec_scheme.empty()) cfg.recon.scheme = parse_scheme(rec_scheme);
      const ModelFile model = read_model(rec_model);
      const StrainProfile strain = read_strain_csv(rec_strain);
      const Reconstruction r = reconstruct(model.model, strain, reconstruct_options(cfg, model));
      write_shape_csv(fs::path(rec_out) / "shape.csv", r.shape);
      write_curvature_csv(fs::path(rec_out) / "curvature.csv", r.curvature);
      if (cfg.output.svg) {
        write_svg(fs::path(rec_out) / "shape.svg", {PlotSeries{"reconstructed", r.shape.points, "#d62728"}},
                  fs::path(rec_strain).filename().string());
      }
      manifest(rec_out, "reconstruct", g, cfg, {rec_model, rec_strain});
      const Vec2 tip = r.shape.points.back();
      std::cout << "points = " << r.shape.size() << "\nspan_mm = " << format_number(r.shape.span())
                << "\ntip_x_mm = " << format_number(tip.x) << "\ntip_y_mm = " << format_number(tip.y)
                << "\ntip_theta_rad = " << format_number(r.shape.headings.back()) << "\n";
      return 0;
    }

    if (*ev) {
      const PlanarShape shape = read_shape_csv(ev_shape);
      const GroundTruth truth =
          ev_truth.empty()
              ? make_ground_truth(parse_shape_kind(ev_args.kind), ev_args.radius, ev_args.span,
                                  cfg.sensor.resolution_mm, ev_args.straight)
              : custom_ground_truth(read_shape_csv(ev_truth));
      std::optional<StrainProfile> strain;
      std::optional<CurvatureProfile> curv;
      if (!ev_strain.empty()) strain = read_strain_csv(ev_strain);
      if (strain && !ev_model.empty()) {
        const ModelFile model = read_model(ev_model);
        curv = strains_to_curvatures(model.model, *strain, reconstruct_options(cfg, model).straight_threshold_ue,
                                     cfg.recon.sign);
      }
      ErrorReport report = evaluate(shape, truth, curv ? &*curv : nullptr, strain ? &*strain : nullptr);
      report.name = ev_name;
      write_report_kv(std::cout, report);
      std::cout << "# " << report_csv_header() << "\n" << report_csv_row(report) << "\n";
      if (!ev_overlay.empty()) write_svg(ev_overlay, overlay_series(shape, truth), ev_name);
      return 0;
    }

    if (*sim) {
      if (sim_noise) cfg.sensor.noise_ue = *sim_noise;
      if (sim_bias) cfg.sensor.bias_mm = *sim_bias;
      if (sim_seed) cfg.sensor.seed = *sim_seed;
      if (sim_rate) cfg.rate_hz = *sim_rate;
      cfg.sensor.validate();
      if (jig_set) {
        const auto ds = write_synthetic_dataset(sim_out, cfg);
        manifest(sim_out, "simulate", g, cfg, {});
        std::cout << "calibration_manifest = " << ds.calibration_manifest.string()
                  << "\ntrials = " << ds.trials_file.string() << "\n";
        return 0;
      }
      const GroundTruth truth = make_ground_truth(parse_shape_kind(sim_args.kind), sim_args.radius,
                                                  sim_args.span, cfg.sensor.resolution_mm, sim_args.straight);
      std::size_t k = 0;
      stream_frames({truth}, cfg.sensor, cfg.rate_hz, sim_frames, [&](const StrainProfile& frame) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%05zu.csv", k++);
        write_strain_csv(fs::path(sim_out) / name, frame);
        return true;
      });
      manifest(sim_out, "simulate", g, cfg, {});
      std::cout << "frames = " << k << "\n";
      return 0;
    }

    if (*pipe) {
      PipelineInputs in;
      in.trials_file = pipe_trials;
      if (!pipe_model.empty()) in.model_path = pipe_model;
      if (!pipe_cal.empty()) in.calibration_manifest = pipe_cal;
      if (pipe_seed) cfg.sensor.seed = *pipe_seed;
      const fs::path out = pipe_out.empty() ? fs::path(cfg.output.dir) : fs::path(pipe_out);
      const PipelineResult result = run_pipeline(cfg, in, parallel);
      write_pipeline_outputs(out, result, cfg);
      manifest(out, "pipeline", g, cfg, result.inputs_read);
      std::cout << report_csv_header() << "\n";
      for (const auto& t : result.trials) std::cout << report_csv_row(t.report) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
