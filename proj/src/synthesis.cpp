#include "ofdr/synthesis.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ofdr/error.hpp"

namespace ofdr {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_a), static_cast<std::uint32_t>(stream_b)};
  return std::mt19937_64(seq);
}

template <class MeanCurvature>
StrainProfile sample_cells(double length, MeanCurvature&& mean_curvature, const SensorModel& sensor,
                           std::mt19937_64& rng) {
  const auto cells =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(length / sensor.resolution_mm)));
  const double h = length / static_cast<double>(cells);

  StrainProfile p;
  p.positions.resize(cells);
  p.strains.resize(cells);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = static_cast<double>(i) * h;
    const double hi = i + 1 == cells ? length : static_cast<double>(i + 1) * h;
    p.positions[i] = 0.5 * (lo + hi);
    double e = sensor.bias_mm * mean_curvature(lo, hi) * 1e6;
    if (sensor.noise_ue > 0.0) e += sensor.noise_ue * noise(rng);
    p.strains[i] = e;
  }
  return p;
}

StrainProfile sample_truth(const GroundTruth& truth, const SensorModel& sensor, std::mt19937_64& rng) {
  return sample_cells(
      truth.total_length_mm, [&](double lo, double hi) { return truth.mean_curvature(lo, hi); }, sensor, rng);
}

}  // namespace

void SensorModel::validate() const {
  if (!(bias_mm > 0.0)) throw Error(ErrorKind::InvalidSpec, "sensor bias must be > 0 mm");
  if (!(resolution_mm > 0.0)) throw Error(ErrorKind::InvalidSpec, "sensor resolution must be > 0 mm");
  if (!(noise_ue >= 0.0)) throw Error(ErrorKind::InvalidSpec, "sensor noise must be >= 0 ue");
}

StrainProfile strain_from_truth(const GroundTruth& truth, const SensorModel& sensor) {
  sensor.validate();
  auto rng = make_rng(sensor.seed, 0, 0);
  return sample_truth(truth, sensor, rng);
}

std::vector<CalibrationSlot> synth_calibration_dataset(const std::vector<double>& jig_radii_mm,
                                                       const SensorModel& sensor,
                                                       const JigOptions& options) {
  sensor.validate();
  if (options.trials == 0) throw Error(ErrorKind::InvalidSpec, "calibration needs at least one trial");
  if (!(options.slot_length_mm > 0.0)) throw Error(ErrorKind::InvalidSpec, "slot length must be > 0 mm");
  std::vector<CalibrationSlot> slots;
  slots.reserve(jig_radii_mm.size());
  for (std::size_t k = 0; k < jig_radii_mm.size(); ++k) {
    const double radius = jig_radii_mm[k];
    if (radius < 0.0) throw Error(ErrorKind::InvalidSpec, "jig radius must be >= 0 mm");
    const double curvature = radius > 0.0 ? 1.0 / radius : 0.0;
    CalibrationSlot slot;
    slot.radius_mm = radius;
    for (std::size_t t = 0; t < options.trials; ++t) {
      auto rng = make_rng(sensor.seed, k + 1, t + 1);
      StrainProfile p = sample_cells(
          options.slot_length_mm, [curvature](double, double) { return curvature; }, sensor, rng);
      p.meta.sensor_id = "slot" + std::to_string(k) + "-trial" + std::to_string(t);
      slot.trials.push_back(std::move(p));
    }
    slots.push_back(std::move(slot));
  }
  return slots;
}

void stream_frames(const std::vector<GroundTruth>& poses, const SensorModel& sensor, double rate_hz,
                   std::size_t frames_per_pose, const std::function<bool(const StrainProfile&)>& sink) {
  sensor.validate();
  if (!(rate_hz > 0.0)) throw Error(ErrorKind::InvalidSpec, "frame rate must be > 0 Hz");
  std::uint64_t k = 0;
  for (const auto& pose : poses) {
    for (std::size_t f = 0; f < frames_per_pose; ++f, ++k) {
      auto rng = make_rng(sensor.seed, 0x5eed0000 + (k & 0xffffffff), k >> 32);
      StrainProfile frame = sample_truth(pose, sensor, rng);
      frame.meta.rate_hz = rate_hz;
      frame.meta.timestamp_s = static_cast<double>(k) / rate_hz;
      frame.meta.sensor_id = "frame" + std::to_string(k);
      if (!sink(frame)) return;
    }
  }
}

FrameStream stream_frames(const std::vector<GroundTruth>& poses, const SensorModel& sensor,
                          double rate_hz, std::size_t frames_per_pose) {
  FrameStream stream;
  stream.frame_rate_hz = rate_hz;
  stream_frames(poses, sensor, rate_hz, frames_per_pose, [&](const StrainProfile& frame) {
    stream.frames.push_back(frame);
    return true;
  });
  return stream;
}

}  // namespace ofdr
