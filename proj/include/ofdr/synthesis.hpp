#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ofdr/calibration.hpp"
#include "ofdr/metrics.hpp"
#include "ofdr/profile.hpp"

namespace ofdr {

// Effective lever arm implied by the measured strain * radius products of the
// C-shape trials (mean of 0.1453, 0.1461, 0.1473 mm).
inline constexpr double kTableBiasMm = 0.1464;

struct SensorModel {
  double bias_mm = kTableBiasMm;
  double resolution_mm = 1.3;
  double noise_ue = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Strain read by each gauge cell of a sensor lying along `truth`:
// bias * (cell-averaged curvature) * 1e6 plus iid gaussian noise.
// The cell count is round(length / resolution) so the cells tile the
// truth exactly; cell centers become the profile positions.
StrainProfile strain_from_truth(const GroundTruth& truth, const SensorModel& sensor);

struct JigOptions {
  std::size_t trials = 3;
  double slot_length_mm = 100.0;
};

// Constant-curvature slot readings (radius 0 = straight), independent noise
// per slot and trial.
std::vector<CalibrationSlot> synth_calibration_dataset(const std::vector<double>& jig_radii_mm,
                                                       const SensorModel& sensor,
                                                       const JigOptions& options = {});

struct FrameStream {
  double frame_rate_hz = 62.5;
  std::vector<StrainProfile> frames;
};

// Replays each pose for `frames_per_pose` frames at a fixed cadence. Frame k
// is stamped k / rate seconds and draws its own noise, so frames carry no
// shared state.
FrameStream stream_frames(const std::vector<GroundTruth>& poses, const SensorModel& sensor,
                          double rate_hz = 62.5, std::size_t frames_per_pose = 1);

// Same, handing frames to `sink` one at a time. Returning false stops the stream.
void stream_frames(const std::vector<GroundTruth>& poses, const SensorModel& sensor, double rate_hz,
                   std::size_t frames_per_pose, const std::function<bool(const StrainProfile&)>& sink);

}  // namespace ofdr
