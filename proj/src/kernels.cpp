#include "atsvo/kernels.hpp"

#include <array>

namespace atsvo::kernels {

namespace {

inline uint8_t box_at(const ImageU8& in, int x, int y, int r, int n) {
  int sum = 0;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) sum += in.at_clamped(x + dx, y + dy);
  return static_cast<uint8_t>((2 * sum + n) / (2 * n));  // round half up
}

inline uint8_t median_at(const ImageU8& in, int x, int y, int r) {
  // windows stay small (r <= 7); insertion sort on a stack buffer
  std::array<uint8_t, 225> buf;
  int n = 0;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) buf[n++] = in.at_clamped(x + dx, y + dy);
  for (int i = 1; i < n; ++i) {
    uint8_t v = buf[i];
    int j = i - 1;
    while (j >= 0 && buf[j] > v) {
      buf[j + 1] = buf[j];
      --j;
    }
    buf[j + 1] = v;
  }
  return buf[n / 2];
}

inline float grad_at(const ImageF& in, int x, int y) {
  const float gx = 0.5f * (in.at_clamped(x + 1, y) - in.at_clamped(x - 1, y));
  const float gy = 0.5f * (in.at_clamped(x, y + 1) - in.at_clamped(x, y - 1));
  return std::sqrt(gx * gx + gy * gy);
}

}  // namespace

ImageU8 box_blur_serial(const ImageU8& in, int radius) {
  if (radius <= 0) return in;
  const int n = (2 * radius + 1) * (2 * radius + 1);
  ImageU8 out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    uint8_t* d = out.row(y);
    for (int x = 0; x < in.width(); ++x) d[x] = box_at(in, x, y, radius, n);
  }
  return out;
}

ImageU8 box_blur(const ImageU8& in, int radius) {
  if (radius <= 0) return in;
  const int n = (2 * radius + 1) * (2 * radius + 1);
  ImageU8 out(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < in.height(); ++y) {
    uint8_t* d = out.row(y);
    for (int x = 0; x < in.width(); ++x) d[x] = box_at(in, x, y, radius, n);
  }
  return out;
}

ImageU8 median_blur_serial(const ImageU8& in, int radius) {
  if (radius <= 0) return in;
  ImageU8 out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    uint8_t* d = out.row(y);
    for (int x = 0; x < in.width(); ++x) d[x] = median_at(in, x, y, radius);
  }
  return out;
}

ImageU8 median_blur(const ImageU8& in, int radius) {
  if (radius <= 0) return in;
  ImageU8 out(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < in.height(); ++y) {
    uint8_t* d = out.row(y);
    for (int x = 0; x < in.width(); ++x) d[x] = median_at(in, x, y, radius);
  }
  return out;
}

ImageF gradient_magnitude_serial(const ImageF& in) {
  ImageF out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    float* d = out.row(y);
    for (int x = 0; x < in.width(); ++x) d[x] = grad_at(in, x, y);
  }
  return out;
}

ImageF gradient_magnitude(const ImageF& in) {
  ImageF out(in.width(), in.height());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < in.height(); ++y) {
    float* d = out.row(y);
    for (int x = 0; x < in.width(); ++x) d[x] = grad_at(in, x, y);
  }
  return out;
}

}  // namespace atsvo::kernels
