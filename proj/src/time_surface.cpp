#include "atsvo/time_surface.hpp"

#include <algorithm>
#include <cmath>

#include "atsvo/kernels.hpp"

namespace atsvo {

std::vector<std::pair<int, int>> ats_ring_pattern() {
  std::vector<std::pair<int, int>> p;
  for (int dy = -2; dy <= 2; ++dy)
    for (int dx = -2; dx <= 2; ++dx)
      if (std::max(std::abs(dx), std::abs(dy)) == 2) p.emplace_back(dx, dy);
  return p;  // 16 offsets
}

int SurfaceOfActiveEvents::ingest(std::span<const Event> events) {
  int rejected = 0;
  for (const Event& e : events) {
    if (e.x >= last_.width() || e.y >= last_.height()) {
      ++rejected;
      continue;
    }
    int64_t& cell = last_.at(e.x, e.y);
    cell = std::max(cell, e.t_us);
    latest_ = std::max(latest_, e.t_us);
  }
  return rejected;
}

double compute_decay_rate(const SurfaceOfActiveEvents& sae, int x, int y, int64_t t_now_us,
                          const AtsConfig& cfg) {
  // gather ages of the activated pattern neighbors; border cells count as unset
  double ages[64];
  int count = 0;
  for (const auto& [dx, dy] : cfg.pattern) {
    const int nx = x + dx, ny = y + dy;
    if (nx < 0 || ny < 0 || nx >= sae.width() || ny >= sae.height()) continue;
    const int64_t t = sae.last_us(nx, ny);
    if (t < 0) continue;
    ages[count++] = to_seconds(t_now_us - t);
    if (count == 64) break;
  }
  if (count == 0) return cfg.tau_upper;

  const int keep = std::min(cfg.n_latest, count);
  std::partial_sort(ages, ages + keep, ages + count);  // smallest age = most recent
  double sum = 0.0;
  for (int i = 0; i < keep; ++i) sum += ages[i];
  return std::max(cfg.tau_upper - sum / keep, cfg.tau_lower);
}

namespace {

inline uint8_t decay_gray(int64_t last_us, int64_t t_now_us, double tau) {
  if (last_us < 0) return 0;
  const double age = to_seconds(t_now_us - last_us);
  return static_cast<uint8_t>(std::lround(255.0 * std::exp(-age / tau)));
}

template <bool kParallel>
AtsImage render_impl(const SurfaceOfActiveEvents& sae, int64_t t_now_us,
                     const AtsConfig& cfg, bool adaptive, double tau_const) {
  const int w = sae.width(), h = sae.height();
  AtsImage out;
  out.gray = ImageU8(w, h);
  out.decay = ImageF(w, h);
  out.render_time = to_seconds(t_now_us);

#pragma omp parallel for schedule(static) if (kParallel)
  for (int y = 0; y < h; ++y) {
    uint8_t* g = out.gray.row(y);
    float* d = out.decay.row(y);
    for (int x = 0; x < w; ++x) {
      const double tau = adaptive ? compute_decay_rate(sae, x, y, t_now_us, cfg) : tau_const;
      d[x] = static_cast<float>(tau);
      g[x] = decay_gray(sae.last_us(x, y), t_now_us, tau);
    }
  }

  if constexpr (kParallel) {
    out.gray = kernels::median_blur(kernels::box_blur(out.gray, cfg.box_blur_radius),
                                    cfg.median_blur_radius);
  } else {
    out.gray = kernels::median_blur_serial(
        kernels::box_blur_serial(out.gray, cfg.box_blur_radius), cfg.median_blur_radius);
  }
  return out;
}

}  // namespace

AtsImage render_ats(const SurfaceOfActiveEvents& sae, int64_t t_now_us,
                    const AtsConfig& cfg) {
  return render_impl<true>(sae, t_now_us, cfg, true, 0.0);
}

AtsImage render_ats_serial(const SurfaceOfActiveEvents& sae, int64_t t_now_us,
                           const AtsConfig& cfg) {
  return render_impl<false>(sae, t_now_us, cfg, true, 0.0);
}

AtsImage render_ts(const SurfaceOfActiveEvents& sae, int64_t t_now_us, double tau_const,
                   const AtsConfig& cfg) {
  return render_impl<true>(sae, t_now_us, cfg, false, tau_const);
}

AtsImage render_ts_serial(const SurfaceOfActiveEvents& sae, int64_t t_now_us,
                          double tau_const, const AtsConfig& cfg) {
  return render_impl<false>(sae, t_now_us, cfg, false, tau_const);
}

}  // namespace atsvo
