#pragma once

#include <span>
#include <utility>
#include <vector>

#include "atsvo/core_types.hpp"
#include "atsvo/time_surface.hpp"

namespace atsvo {

struct RgbSelectConfig {
  int block_size = 32;
  int target_per_block = 20;
  double initial_threshold = 20.0;  // gray-units of gradient magnitude
  double adapt_gain = 1.2;          // multiplicative threshold adaptation

  bool valid() const {
    return block_size >= 8 && target_per_block >= 1 && initial_threshold >= 1 &&
           adapt_gain > 1.0;
  }
};

struct EventSelectConfig {
  double alpha = 1.0;
  double score_threshold = 180.0;  // h, gray-units
  int min_separation = 4;          // Chebyshev spacing between kept pixels
  int mask_blur_radius = 1;
  double accumulation_fraction = 0.25;  // trailing share of the build interval

  bool valid() const {
    return alpha >= 0 && min_separation >= 1 && mask_blur_radius >= 0 &&
           accumulation_fraction > 0 && accumulation_fraction <= 1;
  }
};

enum class PixelSource : uint8_t { kRgb, kEvent };

struct SelectedPixel {
  int u = 0;
  int v = 0;
  PixelSource source = PixelSource::kRgb;
  float score = 0.f;
};

using SelectedPixels = std::vector<SelectedPixel>;

/// Block-adaptive gradient selector for RGB frames. Each block keeps its own
/// threshold, scaled up after a call that yielded more than the target count
/// and down after one that yielded fewer. State persists across calls.
class RgbPixelSelector {
 public:
  RgbPixelSelector(int image_width, int image_height, const RgbSelectConfig& cfg);

  SelectedPixels select(const ImageU8& gray);

  std::span<const double> thresholds() const { return thresholds_; }
  int blocks_x() const { return bx_; }
  int blocks_y() const { return by_; }

 private:
  RgbSelectConfig cfg_;
  int w_, h_, bx_, by_;
  std::vector<double> thresholds_;
};

/// Fig-5(b) style mask: 1 where the ATS gray exceeds its median-blurred copy
/// and is nonzero.
ImageU8 build_brightness_mask(const AtsImage& ats, const EventSelectConfig& cfg);

/// Pixels of events inside (t0, t1] that land on mask = 1, duplicates
/// collapsed; events must be time-sorted. Output in (v, u) scan order.
std::vector<std::pair<int, int>> filter_events_by_mask(std::span<const Event> events,
                                                       int64_t t0_us, int64_t t1_us,
                                                       const ImageU8& mask);

/// Score I + alpha * |grad I| on the ATS gray channel (central differences,
/// replicate borders).
float event_score(const ImageU8& gray, int u, int v, double alpha);

/// Greedy selection of scored candidates: keep score > h, accept in
/// descending score order (ties by (u, v)), reject anything within Chebyshev
/// distance <= min_separation of an accepted pixel.
SelectedPixels select_event_pixels(const std::vector<std::pair<int, int>>& candidates,
                                   const AtsImage& ats, const EventSelectConfig& cfg);

}  // namespace atsvo
