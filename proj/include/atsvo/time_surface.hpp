#pragma once

#include <span>
#include <utility>
#include <vector>

#include "atsvo/core_types.hpp"

namespace atsvo {

/// Neighbor pattern used for the adaptive decay rate: the 16 cells of the
/// 5x5 neighborhood at Chebyshev distance 2. Replaceable via AtsConfig.
std::vector<std::pair<int, int>> ats_ring_pattern();

struct AtsConfig {
  double tau_upper = 0.3;  // seconds
  double tau_lower = 0.01;
  int n_latest = 5;  // neighbors kept for the decay average, in [1,16]
  int box_blur_radius = 1;
  int median_blur_radius = 1;
  std::vector<std::pair<int, int>> pattern = ats_ring_pattern();

  bool valid() const {
    return tau_lower > 0 && tau_lower <= tau_upper && n_latest >= 1 && n_latest <= 16 &&
           box_blur_radius >= 0 && median_blur_radius >= 0;
  }
};

/// Per-pixel timestamp of the most recent event. Unset pixels hold -1 and are
/// distinguishable from events at t = 0. Single writer; renders work on a
/// const reference and may run concurrently.
class SurfaceOfActiveEvents {
 public:
  SurfaceOfActiveEvents(int width, int height) : last_(width, height, kUnset) {}

  /// Folds a time-ordered batch into the surface. Polarity is ignored.
  /// Returns the number of rejected out-of-bounds events.
  int ingest(std::span<const Event> events);

  int width() const { return last_.width(); }
  int height() const { return last_.height(); }
  int64_t last_us(int x, int y) const { return last_.at(x, y); }
  bool activated(int x, int y) const { return last_.at(x, y) >= 0; }
  int64_t latest_us() const { return latest_; }
  const ImageI64& raw() const { return last_; }

  static constexpr int64_t kUnset = -1;

 private:
  ImageI64 last_;
  int64_t latest_ = 0;
};

/// Rendered time surface. gray carries the blur chain (box then median),
/// decay is the per-pixel tau in seconds stored before blurring.
struct AtsImage {
  ImageU8 gray;
  ImageF decay;
  double render_time = 0.0;  // seconds
};

/// Adaptive decay rate at (x, y): mean age of the n most recent activated
/// pattern neighbors subtracted from tau_upper, clamped to tau_lower.
/// Returns tau_upper when no activated neighbor exists.
double compute_decay_rate(const SurfaceOfActiveEvents& sae, int x, int y, int64_t t_now_us,
                          const AtsConfig& cfg);

/// Adaptive time surface at t_now: 255 * exp(-age / tau(x)) per activated
/// pixel, 0 for unset pixels, then box blur and median blur.
AtsImage render_ats(const SurfaceOfActiveEvents& sae, int64_t t_now_us, const AtsConfig& cfg);
AtsImage render_ats_serial(const SurfaceOfActiveEvents& sae, int64_t t_now_us,
                           const AtsConfig& cfg);

/// Constant-decay baseline; same pipeline with tau(x) = tau_const.
AtsImage render_ts(const SurfaceOfActiveEvents& sae, int64_t t_now_us, double tau_const,
                   const AtsConfig& cfg);
AtsImage render_ts_serial(const SurfaceOfActiveEvents& sae, int64_t t_now_us,
                          double tau_const, const AtsConfig& cfg);

}  // namespace atsvo
