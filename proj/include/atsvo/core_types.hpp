#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstdint>
#include <memory>
#include <optional>

#include "atsvo/image.hpp"

namespace atsvo {

using Vector6d = Eigen::Matrix<double, 6, 1>;

/// One camera event. Timestamps are integer microseconds, frame timestamps
/// everywhere else are double seconds; conversion happens once at dataset
/// load / generation.
struct Event {
  int64_t t_us;
  uint16_t x;
  uint16_t y;
  int8_t polarity;  // +1 or -1
};

inline int64_t to_micros(double seconds) {
  return static_cast<int64_t>(std::llround(seconds * 1e6));
}
inline double to_seconds(int64_t micros) { return static_cast<double>(micros) * 1e-6; }

/// Rigid transform, unit quaternion + translation. Acts on points as
/// p' = R p + t. Twist increments are (v, w) with the exponential map.
class PoseSE3 {
 public:
  PoseSE3() : q_(Eigen::Quaterniond::Identity()), t_(Eigen::Vector3d::Zero()) {}
  PoseSE3(const Eigen::Quaterniond& q, const Eigen::Vector3d& t, double timestamp = 0.0)
      : q_(q.normalized()), t_(t), timestamp(timestamp) {}

  static PoseSE3 identity() { return PoseSE3(); }

  const Eigen::Quaterniond& rotation() const { return q_; }
  const Eigen::Vector3d& translation() const { return t_; }
  Eigen::Matrix3d rotation_matrix() const { return q_.toRotationMatrix(); }

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const { return q_ * p + t_; }

  /// Group composition this ∘ rhs; the timestamp of rhs is carried over.
  PoseSE3 compose(const PoseSE3& rhs) const {
    return PoseSE3(q_ * rhs.q_, q_ * rhs.t_ + t_, rhs.timestamp);
  }
  PoseSE3 operator*(const PoseSE3& rhs) const { return compose(rhs); }

  PoseSE3 inverse() const {
    const Eigen::Quaterniond qi = q_.conjugate();
    return PoseSE3(qi, -(qi * t_), timestamp);
  }

  /// exp of a twist (v, w): rotation exp([w]x), translation V(w) v.
  static PoseSE3 exp(const Vector6d& twist, double timestamp = 0.0);
  /// Inverse of exp; returns (v, w).
  Vector6d log() const;

  double timestamp = 0.0;

 private:
  Eigen::Quaterniond q_;
  Eigen::Vector3d t_;
};

/// a^-1 ∘ b.
inline PoseSE3 relative_pose(const PoseSE3& a, const PoseSE3& b) {
  return a.inverse().compose(b);
}

inline Eigen::Matrix3d skew(const Eigen::Vector3d& w) {
  Eigen::Matrix3d m;
  // clang-format off
  m <<      0, -w.z(),  w.y(),
        w.z(),      0, -w.x(),
       -w.y(),  w.x(),      0;
  // clang-format on
  return m;
}

/// Pinhole camera with optional radial-tangential distortion.
struct CameraModel {
  double fx = 0, fy = 0, cx = 0, cy = 0;
  int width = 0, height = 0;
  double k1 = 0, k2 = 0, p1 = 0, p2 = 0;

  bool has_distortion() const { return k1 != 0 || k2 != 0 || p1 != 0 || p2 != 0; }
  bool in_image(double u, double v, double margin = 0.0) const {
    return u >= margin && v >= margin && u <= width - 1 - margin && v <= height - 1 - margin;
  }

  /// Pinhole projection with distortion; nullopt when p is behind the camera
  /// or the pixel leaves the image bounds.
  std::optional<Eigen::Vector2d> project(const Eigen::Vector3d& p) const;

  /// Projection without the bounds test; requires p.z > 0.
  Eigen::Vector2d project_unchecked(const Eigen::Vector3d& p) const;

  /// Projection plus its 2x3 Jacobian w.r.t. the camera-frame point.
  Eigen::Vector2d project_jacobian(const Eigen::Vector3d& p,
                                   Eigen::Matrix<double, 2, 3>* J) const;

  /// Back-projection; inverse of project up to the iterative undistortion
  /// tolerance. nullopt for depth <= 0.
  std::optional<Eigen::Vector3d> unproject(double u, double v, double depth) const;
};

/// Fixed RGB-D / event rig. T_rgb_to_event maps RGB-camera coordinates into
/// event-camera coordinates.
struct RigCalibration {
  PoseSE3 T_rgb_to_event;
  CameraModel rgb_cam;
  CameraModel event_cam;
  double depth_scale = 0.001;  // meters per 16-bit depth unit
};

/// One RGB-D input frame with the precomputed grayscale pyramid.
/// Depth is in meters; 0 marks invalid and every consumer skips it.
struct Frame {
  double timestamp = 0.0;
  ImageU8 gray;
  ImageF depth;
  Pyramid pyramid;

  static Frame make(double timestamp, ImageU8 gray, ImageF depth, int pyramid_levels);
};

using FramePtr = std::shared_ptr<const Frame>;

}  // namespace atsvo
