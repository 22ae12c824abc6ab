#include "atsvo/core_types.hpp"

#include <cmath>

namespace atsvo {

PoseSE3 PoseSE3::exp(const Vector6d& twist, double timestamp) {
  const Eigen::Vector3d v = twist.head<3>();
  const Eigen::Vector3d w = twist.tail<3>();
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);

  Eigen::Quaterniond q;
  Eigen::Matrix3d V;
  const Eigen::Matrix3d W = skew(w);
  if (theta < 1e-8) {
    // second-order Taylor expansions around theta = 0
    q = Eigen::Quaterniond(1.0, 0.5 * w.x(), 0.5 * w.y(), 0.5 * w.z());
    q.normalize();
    V = Eigen::Matrix3d::Identity() + 0.5 * W + (1.0 / 6.0) * W * W;
  } else {
    q = Eigen::Quaterniond(Eigen::AngleAxisd(theta, w / theta));
    V = Eigen::Matrix3d::Identity() + ((1.0 - std::cos(theta)) / theta2) * W +
        ((theta - std::sin(theta)) / (theta2 * theta)) * W * W;
  }
  return PoseSE3(q, V * v, timestamp);
}

Vector6d PoseSE3::log() const {
  Eigen::AngleAxisd aa(q_);
  double theta = aa.angle();
  Eigen::Vector3d axis = aa.axis();
  if (theta > M_PI) {  // keep the short arc
    theta = 2.0 * M_PI - theta;
    axis = -axis;
  }
  const Eigen::Vector3d w = theta * axis;
  const Eigen::Matrix3d W = skew(w);

  Eigen::Matrix3d Vinv;
  if (theta < 1e-8) {
    Vinv = Eigen::Matrix3d::Identity() - 0.5 * W + (1.0 / 12.0) * W * W;
  } else {
    const double half = 0.5 * theta;
    const double cot = std::cos(half) / std::sin(half);
    Vinv = Eigen::Matrix3d::Identity() - 0.5 * W +
           ((1.0 - half * cot) / (theta * theta)) * W * W;
  }
  Vector6d twist;
  twist.head<3>() = Vinv * t_;
  twist.tail<3>() = w;
  return twist;
}

namespace {

// normalized coords -> distorted normalized coords
inline Eigen::Vector2d distort_radtan(const CameraModel& c, double xn, double yn) {
  const double r2 = xn * xn + yn * yn;
  const double radial = 1.0 + c.k1 * r2 + c.k2 * r2 * r2;
  const double xd = xn * radial + 2.0 * c.p1 * xn * yn + c.p2 * (r2 + 2.0 * xn * xn);
  const double yd = yn * radial + c.p1 * (r2 + 2.0 * yn * yn) + 2.0 * c.p2 * xn * yn;
  return {xd, yd};
}

}  // namespace

Eigen::Vector2d CameraModel::project_unchecked(const Eigen::Vector3d& p) const {
  const double xn = p.x() / p.z();
  const double yn = p.y() / p.z();
  if (!has_distortion()) return {fx * xn + cx, fy * yn + cy};
  const Eigen::Vector2d d = distort_radtan(*this, xn, yn);
  return {fx * d.x() + cx, fy * d.y() + cy};
}

std::optional<Eigen::Vector2d> CameraModel::project(const Eigen::Vector3d& p) const {
  if (p.z() <= 0.0) return std::nullopt;
  const Eigen::Vector2d uv = project_unchecked(p);
  if (!in_image(uv.x(), uv.y())) return std::nullopt;
  return uv;
}

Eigen::Vector2d CameraModel::project_jacobian(const Eigen::Vector3d& p,
                                              Eigen::Matrix<double, 2, 3>* J) const {
  const double iz = 1.0 / p.z();
  const double xn = p.x() * iz;
  const double yn = p.y() * iz;

  Eigen::Matrix<double, 2, 3> Jn;  // d(xn,yn)/dp
  // clang-format off
  Jn << iz,  0, -xn * iz,
         0, iz, -yn * iz;
  // clang-format on

  if (!has_distortion()) {
    if (J) {
      J->row(0) = fx * Jn.row(0);
      J->row(1) = fy * Jn.row(1);
    }
    return {fx * xn + cx, fy * yn + cy};
  }

  const double r2 = xn * xn + yn * yn;
  const double radial = 1.0 + k1 * r2 + k2 * r2 * r2;
  const double dradial = 2.0 * k1 + 4.0 * k2 * r2;  // d(radial)/d(r2) * 2
  Eigen::Matrix2d Jd;                               // d(xd,yd)/d(xn,yn)
  Jd(0, 0) = radial + xn * xn * dradial + 2.0 * p1 * yn + 6.0 * p2 * xn;
  Jd(0, 1) = xn * yn * dradial + 2.0 * p1 * xn + 2.0 * p2 * yn;
  Jd(1, 0) = xn * yn * dradial + 2.0 * p2 * yn + 2.0 * p1 * xn;
  Jd(1, 1) = radial + yn * yn * dradial + 6.0 * p1 * yn + 2.0 * p2 * xn;

  const Eigen::Vector2d d = distort_radtan(*this, xn, yn);
  if (J) {
    Eigen::Matrix<double, 2, 3> Jc = Jd * Jn;
    J->row(0) = fx * Jc.row(0);
    J->row(1) = fy * Jc.row(1);
  }
  return {fx * d.x() + cx, fy * d.y() + cy};
}

std::optional<Eigen::Vector3d> CameraModel::unproject(double u, double v,
                                                      double depth) const {
  if (depth <= 0.0) return std::nullopt;
  const double xd = (u - cx) / fx;
  const double yd = (v - cy) / fy;
  double xn = xd, yn = yd;
  if (has_distortion()) {
    for (int it = 0; it < 30; ++it) {
      const double r2 = xn * xn + yn * yn;
      const double radial = 1.0 + k1 * r2 + k2 * r2 * r2;
      const double dx = 2.0 * p1 * xn * yn + p2 * (r2 + 2.0 * xn * xn);
      const double dy = p1 * (r2 + 2.0 * yn * yn) + 2.0 * p2 * xn * yn;
      const double xn1 = (xd - dx) / radial;
      const double yn1 = (yd - dy) / radial;
      const double step = std::abs(xn1 - xn) + std::abs(yn1 - yn);
      xn = xn1;
      yn = yn1;
      if (step < 1e-14) break;
    }
  }
  return Eigen::Vector3d(xn * depth, yn * depth, depth);
}

Frame Frame::make(double timestamp, ImageU8 gray, ImageF depth, int pyramid_levels) {
  Frame f;
  f.timestamp = timestamp;
  f.pyramid = Pyramid::build(gray, pyramid_levels);
  f.gray = std::move(gray);
  f.depth = std::move(depth);
  return f;
}

}  // namespace atsvo
