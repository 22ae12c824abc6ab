#include "atsvo/evaluation.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace atsvo {

double quat_angle_deg(const Eigen::Quaterniond& q) {
  const double s = q.vec().norm();
  const double c = std::abs(q.w());
  return 2.0 * std::atan2(s, c) * 180.0 / M_PI;
}

std::vector<PosePair> associate(const Trajectory& est, const Trajectory& gt,
                                double max_dt) {
  if (est.poses.empty() || gt.poses.empty())
    throw EvalError("associate: empty trajectory");
  std::vector<double> gt_times;
  gt_times.reserve(gt.poses.size());
  for (const auto& p : gt.poses) gt_times.push_back(p.timestamp);

  std::vector<PosePair> pairs;
  for (const auto& e : est.poses) {
    auto it = std::lower_bound(gt_times.begin(), gt_times.end(), e.timestamp);
    size_t best = std::min<size_t>(it - gt_times.begin(), gt.poses.size() - 1);
    if (it != gt_times.begin()) {
      const size_t prev = (it - gt_times.begin()) - 1;
      if (std::abs(gt_times[prev] - e.timestamp) <=
          std::abs(gt_times[best] - e.timestamp))
        best = prev;
    }
    if (std::abs(gt_times[best] - e.timestamp) <= max_dt)
      pairs.push_back({e, gt.poses[best]});
  }
  if (pairs.empty()) throw EvalError("associate: no pairs within max_dt");
  return pairs;
}

SE3Fit fit_se3(std::span<const Eigen::Vector3d> src, std::span<const Eigen::Vector3d> dst) {
  SE3Fit fit;
  const size_t n = src.size();
  Eigen::Vector3d cs = Eigen::Vector3d::Zero(), cd = Eigen::Vector3d::Zero();
  for (size_t i = 0; i < n; ++i) {
    cs += src[i];
    cd += dst[i];
  }
  cs /= double(n);
  cd /= double(n);

  double spread = 0.0;
  Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
  for (size_t i = 0; i < n; ++i) {
    H += (src[i] - cs) * (dst[i] - cd).transpose();
    spread += (src[i] - cs).squaredNorm();
  }
  if (n < 2 || spread < 1e-18) {
    fit.degenerate = true;
    return fit;
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) D(2, 2) = -1;
  fit.R = svd.matrixV() * D * svd.matrixU().transpose();
  fit.t = cd - fit.R * cs;
  return fit;
}

namespace {

void apply_rigid(std::vector<PosePair>& pairs, const Eigen::Matrix3d& R,
                 const Eigen::Vector3d& t) {
  const Eigen::Quaterniond qR(R);
  for (auto& p : pairs) {
    p.est = PoseSE3(qR * p.est.rotation(), R * p.est.translation() + t,
                    p.est.timestamp);
  }
}

}  // namespace

SE3Fit align(std::vector<PosePair>& pairs, int k_first_frames) {
  if (pairs.empty()) throw EvalError("align: no pairs");
  const int k = std::clamp<int>(k_first_frames, 1, static_cast<int>(pairs.size()));

  std::vector<Eigen::Vector3d> src, dst;
  src.reserve(k);
  dst.reserve(k);
  for (int i = 0; i < k; ++i) {
    src.push_back(pairs[i].est.translation());
    dst.push_back(pairs[i].gt.translation());
  }
  SE3Fit fit = fit_se3(src, dst);
  if (fit.degenerate) {  // first-pose alignment
    fit.R = (pairs[0].gt.rotation() * pairs[0].est.rotation().conjugate())
                .toRotationMatrix();
    fit.t = pairs[0].gt.translation() - fit.R * pairs[0].est.translation();
  }
  apply_rigid(pairs, fit.R, fit.t);

  // rotation offset on orientations only, first frame matched exactly
  const Eigen::Quaterniond rot_fix =
      pairs[0].gt.rotation() * pairs[0].est.rotation().conjugate();
  for (auto& p : pairs)
    p.est = PoseSE3(rot_fix * p.est.rotation(), p.est.translation(), p.est.timestamp);
  return fit;
}

Trajectory align(const Trajectory& est, const Trajectory& gt, int k_first_frames,
                 double max_dt) {
  auto pairs = associate(est, gt, max_dt);
  align(pairs, k_first_frames);
  Trajectory out;
  out.poses.reserve(pairs.size());
  for (const auto& p : pairs) out.poses.push_back(p.est);
  return out;
}

double ate_cm(std::span<const PosePair> pairs) {
  if (pairs.empty()) throw EvalError("ate: no pairs");
  double sum = 0.0;
  for (const auto& p : pairs)
    sum += (p.est.translation() - p.gt.translation()).squaredNorm();
  return std::sqrt(sum / double(pairs.size())) * 100.0;
}

RpeResult rpe(std::span<const PosePair> pairs, RpeUnit unit) {
  if (pairs.size() < 2) throw EvalError("rpe: need at least 2 pairs");
  double rot_sum = 0.0, trans_sum = 0.0, denom = 0.0;
  int used = 0;
  for (size_t i = 0; i + 1 < pairs.size(); ++i) {
    const PoseSE3 d_gt = relative_pose(pairs[i].gt, pairs[i + 1].gt);
    const PoseSE3 d_est = relative_pose(pairs[i].est, pairs[i + 1].est);
    const PoseSE3 delta = relative_pose(d_gt, d_est);

    double interval_denom = 1.0;
    if (unit == RpeUnit::kPerDegree) {
      interval_denom = quat_angle_deg(d_gt.rotation());
      if (interval_denom < 1e-9) continue;
    } else if (unit == RpeUnit::kPerMeter) {
      interval_denom = d_gt.translation().norm();
      if (interval_denom < 1e-9) continue;
    }
    rot_sum += quat_angle_deg(delta.rotation());
    trans_sum += delta.translation().norm() * 100.0;
    denom += interval_denom;
    ++used;
  }
  RpeResult r;
  r.used_intervals = used;
  if (used == 0 || denom <= 0.0) {
    r.rot = r.trans = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  r.rot = rot_sum / denom;
  r.trans = trans_sum / denom;
  return r;
}

std::pair<bool, std::optional<double>> detect_divergence(const ErrorReport& report,
                                                         std::span<const PosePair> pairs) {
  const bool ate_bad = report.ate_rmse_cm > 500.0;
  const bool rot_bad = report.rpe_rot_per_deg > 1.0;                 // NaN-safe: false
  const bool trans_bad = report.rpe_trans_cm_per_deg > 20.0;         // 0.2 m/deg
  const bool diverged = ate_bad || rot_bad || trans_bad;

  // earliest time after which the position error exceeds 5 m for a full second
  std::optional<double> cut;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if ((pairs[i].est.translation() - pairs[i].gt.translation()).norm() <= 5.0) continue;
    const double t0 = pairs[i].est.timestamp;
    bool sustained = true;
    for (size_t j = i; j < pairs.size() && pairs[j].est.timestamp <= t0 + 1.0; ++j) {
      if ((pairs[j].est.translation() - pairs[j].gt.translation()).norm() <= 5.0) {
        sustained = false;
        break;
      }
    }
    if (sustained) {
      cut = t0;
      break;
    }
  }
  if (!diverged) cut.reset();
  return {diverged, cut};
}

ErrorReport evaluate(const Trajectory& est, const Trajectory& gt, RpeUnit unit,
                     double max_dt, int k_first_frames) {
  auto pairs = associate(est, gt, max_dt);
  align(pairs, k_first_frames);

  ErrorReport rep;
  rep.unit = unit;
  rep.ate_rmse_cm = ate_cm(pairs);
  const RpeResult requested = rpe(pairs, unit);
  rep.rpe_rot = requested.rot;
  rep.rpe_trans = requested.trans;
  if (pairs.size() >= 2) {
    const RpeResult per_deg = rpe(pairs, RpeUnit::kPerDegree);
    rep.rpe_rot_per_deg = per_deg.rot;
    rep.rpe_trans_cm_per_deg = per_deg.trans;
  }
  auto [flag, cut] = detect_divergence(rep, pairs);
  rep.diverged = flag;
  rep.partial_cut_time = cut;
  return rep;
}

}  // namespace atsvo
