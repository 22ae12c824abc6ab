#include "atsvo/pixel_selection.hpp"

#include <algorithm>
#include <cmath>

#include "atsvo/kernels.hpp"

namespace atsvo {

RgbPixelSelector::RgbPixelSelector(int image_width, int image_height,
                                   const RgbSelectConfig& cfg)
    : cfg_(cfg), w_(image_width), h_(image_height) {
  bx_ = (w_ + cfg.block_size - 1) / cfg.block_size;
  by_ = (h_ + cfg.block_size - 1) / cfg.block_size;
  thresholds_.assign(static_cast<size_t>(bx_) * by_, cfg.initial_threshold);
}

SelectedPixels RgbPixelSelector::select(const ImageU8& gray) {
  const ImageF mag = kernels::gradient_magnitude(to_float(gray));
  SelectedPixels out;
  std::vector<int> counts(thresholds_.size(), 0);

  for (int y = 0; y < h_; ++y) {
    const float* m = mag.row(y);
    const int brow = (y / cfg_.block_size) * bx_;
    for (int x = 0; x < w_; ++x) {
      const int b = brow + x / cfg_.block_size;
      if (m[x] > thresholds_[b]) {
        out.push_back({x, y, PixelSource::kRgb, m[x]});
        ++counts[b];
      }
    }
  }

  // multiplicative adaptation for the next call
  for (size_t b = 0; b < thresholds_.size(); ++b) {
    if (counts[b] > cfg_.target_per_block)
      thresholds_[b] *= cfg_.adapt_gain;
    else if (counts[b] < cfg_.target_per_block)
      thresholds_[b] /= cfg_.adapt_gain;
    thresholds_[b] = std::clamp(thresholds_[b], 1.0, 255.0);
  }
  return out;
}

ImageU8 build_brightness_mask(const AtsImage& ats, const EventSelectConfig& cfg) {
  const ImageU8 blurred = kernels::median_blur(ats.gray, cfg.mask_blur_radius);
  ImageU8 mask(ats.gray.width(), ats.gray.height(), 0);
  for (int y = 0; y < mask.height(); ++y) {
    const uint8_t* g = ats.gray.row(y);
    const uint8_t* b = blurred.row(y);
    uint8_t* m = mask.row(y);
    for (int x = 0; x < mask.width(); ++x) m[x] = (g[x] > b[x] && g[x] > 0) ? 1 : 0;
  }
  return mask;
}

std::vector<std::pair<int, int>> filter_events_by_mask(std::span<const Event> events,
                                                       int64_t t0_us, int64_t t1_us,
                                                       const ImageU8& mask) {
  ImageU8 seen(mask.width(), mask.height(), 0);
  for (const Event& e : events) {
    if (e.t_us <= t0_us) continue;
    if (e.t_us > t1_us) break;  // sorted input
    if (!mask.in_bounds(e.x, e.y)) continue;
    if (mask.at(e.x, e.y)) seen.at(e.x, e.y) = 1;
  }
  std::vector<std::pair<int, int>> out;
  for (int y = 0; y < seen.height(); ++y)
    for (int x = 0; x < seen.width(); ++x)
      if (seen.at(x, y)) out.emplace_back(x, y);
  return out;
}

float event_score(const ImageU8& gray, int u, int v, double alpha) {
  const float gx =
      0.5f * (static_cast<float>(gray.at_clamped(u + 1, v)) - gray.at_clamped(u - 1, v));
  const float gy =
      0.5f * (static_cast<float>(gray.at_clamped(u, v + 1)) - gray.at_clamped(u, v - 1));
  return static_cast<float>(gray.at(u, v)) +
         static_cast<float>(alpha) * std::sqrt(gx * gx + gy * gy);
}

SelectedPixels select_event_pixels(const std::vector<std::pair<int, int>>& candidates,
                                   const AtsImage& ats, const EventSelectConfig& cfg) {
  struct Scored {
    float score;
    int u, v;
  };
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  for (const auto& [u, v] : candidates) {
    const float s = event_score(ats.gray, u, v, cfg.alpha);
    if (s > cfg.score_threshold) scored.push_back({s, u, v});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  // occupancy grid with cell size = min_separation keeps the spacing test O(1)
  const int d = cfg.min_separation;
  const int gw = ats.gray.width() / d + 2, gh = ats.gray.height() / d + 2;
  std::vector<std::vector<std::pair<int, int>>> grid(static_cast<size_t>(gw) * gh);

  SelectedPixels out;
  for (const Scored& c : scored) {
    const int cu = c.u / d, cv = c.v / d;
    bool blocked = false;
    for (int gy = std::max(cv - 1, 0); gy <= std::min(cv + 1, gh - 1) && !blocked; ++gy)
      for (int gx = std::max(cu - 1, 0); gx <= std::min(cu + 1, gw - 1); ++gx) {
        for (const auto& [au, av] : grid[static_cast<size_t>(gy) * gw + gx]) {
          if (std::max(std::abs(au - c.u), std::abs(av - c.v)) <= d) {
            blocked = true;
            break;
          }
        }
        if (blocked) break;
      }
    if (blocked) continue;
    grid[static_cast<size_t>(cv) * gw + cu].emplace_back(c.u, c.v);
    out.push_back({c.u, c.v, PixelSource::kEvent, c.score});
  }
  return out;
}

}  // namespace atsvo
