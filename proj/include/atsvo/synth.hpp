#pragma once

#include <functional>
#include <string>
#include <vector>

#include "atsvo/core_types.hpp"
#include "atsvo/evaluation.hpp"

// Deterministic synthetic data generator: ray-cast renderer over a textured
// box scene, closed-form motion profiles, and an ideal event model (events at
// log-intensity crossings of the contrast threshold). Serves as the
// independent ground-truth source for the tracking and evaluation tests.

namespace atsvo::synth {

/// Axis-aligned textured box. The room is rendered from the inside, obstacle
/// boxes from the outside.
struct Box {
  Eigen::Vector3d min;
  Eigen::Vector3d max;
};

struct Scene {
  Box room;
  std::vector<Box> boxes;
  uint64_t texture_seed = 1;

  /// Default desk-scale room with two obstacle boxes.
  static Scene make_room(uint64_t seed, const Eigen::Vector3d& extents = {6.0, 4.0, 3.0});
};

struct RayHit {
  double depth = -1.0;  // camera-frame z for dirs with unit z component
  int face_id = -1;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  bool valid() const { return depth > 0.0; }
};

/// Nearest surface along origin + s * dir. dir need not be normalized; the
/// returned depth is the ray parameter s.
RayHit trace_ray(const Scene& scene, const Eigen::Vector3d& origin,
                 const Eigen::Vector3d& dir);

/// Smooth procedural gray level at a surface point (sinusoid mixture, range
/// stays inside [0, 255] without clamping).
double surface_intensity(const Scene& scene, int face_id, const Eigen::Vector3d& point);

struct MotionSegment {
  enum class Kind { kStatic, kMove, kJerk };
  Kind kind = Kind::kStatic;
  double duration = 1.0;
  Eigen::Vector3d v_world = Eigen::Vector3d::Zero();  // kMove, m/s
  Eigen::Vector3d w_body = Eigen::Vector3d::Zero();   // kMove, rad/s
  double freq_hz = 8.0;                               // kJerk
  double rot_amp = 0.0;                               // kJerk, rad
  double trans_amp = 0.0;                             // kJerk, m
};

/// Piecewise closed-form camera-in-world trajectory; pose is continuous.
struct MotionProfile {
  PoseSE3 start_T_wc;
  std::vector<MotionSegment> segments;

  double duration() const;
  PoseSE3 pose_at(double t) const;  // clamped to [0, duration]
};

/// Camera-in-world pose looking from `position` toward `target`, world +z up.
PoseSE3 make_lookat(const Eigen::Vector3d& position, const Eigen::Vector3d& target,
                    const Eigen::Vector3d& up = {0, 0, 1});

/// gray/depth render at T_wc (camera-in-world). Quantizes to 8 bit.
void render_view(const Scene& scene, const CameraModel& cam, const PoseSE3& T_wc,
                 ImageU8* gray, ImageF* depth);
void render_view_serial(const Scene& scene, const CameraModel& cam, const PoseSE3& T_wc,
                        ImageU8* gray, ImageF* depth);

/// Continuous-intensity render (no quantization), optionally depth.
void render_intensity(const Scene& scene, const CameraModel& cam, const PoseSE3& T_wc,
                      ImageF* intensity, ImageF* depth);

struct EventGenConfig {
  double contrast = 0.3;        // log-intensity threshold C
  double sample_rate = 1000.0;  // dense sampling rate, Hz
  double t0 = 0.0;
  double t1 = 0.0;  // 0 -> profile duration
  double timestamp_jitter_us = 0.0;
  double threshold_sigma = 0.0;
  uint64_t noise_seed = 0;
};

/// Ideal event stream for a camera following pose_fn (camera-in-world).
/// Events fire at linear-interpolated crossings of +-C in log intensity,
/// globally sorted by (t, y, x).
std::vector<Event> generate_events(const Scene& scene, const CameraModel& cam,
                                   const std::function<PoseSE3(double)>& pose_fn,
                                   const EventGenConfig& cfg);

/// Convenience wrapper over the profile itself.
std::vector<Event> generate_events(const Scene& scene, const CameraModel& cam,
                                   const MotionProfile& profile, double contrast,
                                   double sample_rate = 1000.0);

struct SequenceConfig {
  RigCalibration rig;
  double frame_rate = 30.0;
  double contrast = 0.3;
  double sample_rate = 1000.0;
  double exposure_s = 0.0;  // > 0 enables motion blur on RGB frames
  int blur_substeps = 5;
  double timestamp_jitter_us = 0.0;
  double threshold_sigma = 0.0;
  uint64_t seed = 1;
};

struct SequenceFrame {
  double timestamp = 0.0;
  ImageU8 gray;
  ImageF depth;
};

struct SyntheticSequence {
  RigCalibration rig;
  double frame_rate = 30.0;
  std::vector<SequenceFrame> frames;
  std::vector<Event> events;
  Trajectory groundtruth;  // RGB camera in world, at frame timestamps
};

SyntheticSequence make_sequence(const Scene& scene, const MotionProfile& profile,
                                const SequenceConfig& cfg);

/// Profile-file parser for the CLI (key=value plus repeated segment lines).
struct ProfileSpec {
  Scene scene;
  MotionProfile profile;
  SequenceConfig seq;
};
ProfileSpec parse_profile_file(const std::string& path);

}  // namespace atsvo::synth
