#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "atsvo/core_types.hpp"

namespace atsvo {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Timestamped pose list, strictly increasing timestamps. Poses are
/// camera-in-world.
struct Trajectory {
  std::vector<PoseSE3> poses;

  bool timestamps_strictly_increasing() const {
    for (size_t i = 1; i < poses.size(); ++i)
      if (poses[i].timestamp <= poses[i - 1].timestamp) return false;
    return true;
  }
};

struct PosePair {
  PoseSE3 est;
  PoseSE3 gt;
};

/// Nearest-timestamp pairing within max_dt; unmatched estimates dropped.
/// Throws EvalError when no pair survives.
std::vector<PosePair> associate(const Trajectory& est, const Trajectory& gt, double max_dt);

/// Least-squares rigid fit p_dst ~= R p_src + t (no scale).
struct SE3Fit {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();
  bool degenerate = false;
};
SE3Fit fit_se3(std::span<const Eigen::Vector3d> src, std::span<const Eigen::Vector3d> dst);

/// Alignment protocol: SE(3) fit over the first k pairs applied to the
/// estimate, then a rotation offset making the first estimated orientation
/// equal the ground-truth one (orientations only). Degenerate windows fall
/// back to first-pose alignment. Modifies the est side of `pairs`.
SE3Fit align(std::vector<PosePair>& pairs, int k_first_frames);

/// Convenience overload matching the file-level workflow.
Trajectory align(const Trajectory& est, const Trajectory& gt, int k_first_frames,
                 double max_dt = 0.02);

/// RMSE of translational differences, in cm.
double ate_cm(std::span<const PosePair> pairs);

enum class RpeUnit { kPerFrame, kPerDegree, kPerMeter };

struct RpeResult {
  double rot = 0.0;    // deg per unit
  double trans = 0.0;  // cm per unit
  int used_intervals = 0;
};

/// Relative pose error over consecutive pairs. Intervals with zero
/// ground-truth motion are skipped for the per-degree / per-meter units;
/// NaNs returned when nothing remains.
RpeResult rpe(std::span<const PosePair> pairs, RpeUnit unit);

struct ErrorReport {
  double ate_rmse_cm = 0.0;
  double rpe_rot = 0.0;    // deg per requested unit
  double rpe_trans = 0.0;  // cm per requested unit
  RpeUnit unit = RpeUnit::kPerFrame;
  // per-degree values always computed; they drive the divergence thresholds
  double rpe_rot_per_deg = std::numeric_limits<double>::quiet_NaN();
  double rpe_trans_cm_per_deg = std::numeric_limits<double>::quiet_NaN();
  bool diverged = false;
  std::optional<double> partial_cut_time;
};

/// Divergence per the ATE > 5 m, RPE > 1 deg/deg, > 0.2 m/deg thresholds.
/// The cut time is the earliest moment after which the position error stays
/// above 5 m for at least one second.
std::pair<bool, std::optional<double>> detect_divergence(const ErrorReport& report,
                                                         std::span<const PosePair> pairs);

/// Full pipeline: associate, align, ATE, RPE, divergence.
ErrorReport evaluate(const Trajectory& est, const Trajectory& gt, RpeUnit unit,
                     double max_dt = 0.02, int k_first_frames = 10);

double quat_angle_deg(const Eigen::Quaterniond& q);

}  // namespace atsvo
