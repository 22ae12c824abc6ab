#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace atsvo {

/// Dense row-major single-channel image.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : w_(width), h_(height), data_(static_cast<size_t>(width) * height, fill) {
    assert(width >= 0 && height >= 0);
  }

  int width() const { return w_; }
  int height() const { return h_; }
  bool empty() const { return data_.empty(); }
  size_t size() const { return data_.size(); }

  T& at(int x, int y) {
    assert(in_bounds(x, y));
    return data_[static_cast<size_t>(y) * w_ + x];
  }
  const T& at(int x, int y) const {
    assert(in_bounds(x, y));
    return data_[static_cast<size_t>(y) * w_ + x];
  }

  // replicate-border access
  T at_clamped(int x, int y) const {
    x = std::clamp(x, 0, w_ - 1);
    y = std::clamp(y, 0, h_ - 1);
    return data_[static_cast<size_t>(y) * w_ + x];
  }

  bool in_bounds(int x, int y) const { return x >= 0 && x < w_ && y >= 0 && y < h_; }

  T* row(int y) { return data_.data() + static_cast<size_t>(y) * w_; }
  const T* row(int y) const { return data_.data() + static_cast<size_t>(y) * w_; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  bool operator==(const Image& o) const {
    return w_ == o.w_ && h_ == o.h_ && data_ == o.data_;
  }

 private:
  int w_ = 0, h_ = 0;
  std::vector<T> data_;
};

using ImageU8 = Image<uint8_t>;
using ImageU16 = Image<uint16_t>;
using ImageF = Image<float>;
using ImageI64 = Image<int64_t>;

inline ImageF to_float(const ImageU8& in) {
  ImageF out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    const uint8_t* s = in.row(y);
    float* d = out.row(y);
    for (int x = 0; x < in.width(); ++x) d[x] = static_cast<float>(s[x]);
  }
  return out;
}

inline ImageU8 to_u8(const ImageF& in) {
  ImageU8 out(in.width(), in.height());
  for (int y = 0; y < in.height(); ++y) {
    const float* s = in.row(y);
    uint8_t* d = out.row(y);
    for (int x = 0; x < in.width(); ++x)
      d[x] = static_cast<uint8_t>(std::clamp(std::lround(s[x]), 0l, 255l));
  }
  return out;
}

/// Interpolated value and the exact partial derivatives of the bilinear
/// surface at (x, y). Valid domain is [0, w-1] x [0, h-1].
struct SampleGrad {
  float value;
  float dx;
  float dy;
};

inline bool bilinear_in_domain(const ImageF& img, double x, double y) {
  return x >= 0.0 && y >= 0.0 && x <= img.width() - 1 && y <= img.height() - 1;
}

inline float bilinear(const ImageF& img, double x, double y) {
  int x0 = std::min(static_cast<int>(x), img.width() - 2);
  int y0 = std::min(static_cast<int>(y), img.height() - 2);
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  const double fx = x - x0, fy = y - y0;
  const float* r0 = img.row(y0);
  const float* r1 = img.row(y0 + 1);
  const double i00 = r0[x0], i10 = r0[x0 + 1];
  const double i01 = r1[x0], i11 = r1[x0 + 1];
  return static_cast<float>((1.0 - fy) * ((1.0 - fx) * i00 + fx * i10) +
                            fy * ((1.0 - fx) * i01 + fx * i11));
}

inline SampleGrad bilinear_grad(const ImageF& img, double x, double y) {
  int x0 = std::min(static_cast<int>(x), img.width() - 2);
  int y0 = std::min(static_cast<int>(y), img.height() - 2);
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  const double fx = x - x0, fy = y - y0;
  const float* r0 = img.row(y0);
  const float* r1 = img.row(y0 + 1);
  const double i00 = r0[x0], i10 = r0[x0 + 1];
  const double i01 = r1[x0], i11 = r1[x0 + 1];
  SampleGrad g;
  g.value = static_cast<float>((1.0 - fy) * ((1.0 - fx) * i00 + fx * i10) +
                               fy * ((1.0 - fx) * i01 + fx * i11));
  g.dx = static_cast<float>((1.0 - fy) * (i10 - i00) + fy * (i11 - i01));
  g.dy = static_cast<float>((1.0 - fx) * (i01 - i00) + fx * (i11 - i10));
  return g;
}

/// 2x2 average downsample; output dimensions are floor(input/2).
ImageF half_sample(const ImageF& in);

/// Image pyramid, level 0 = full resolution, each level half the previous.
struct Pyramid {
  std::vector<ImageF> levels;

  int num_levels() const { return static_cast<int>(levels.size()); }
  const ImageF& level(int l) const { return levels[l]; }

  static Pyramid build(const ImageU8& base, int num_levels);
  static Pyramid build(ImageF base, int num_levels);
};

/// Maps a level-0 pixel coordinate to level `l` under 2x2-average downsampling
/// (pixel centers at integer coordinates).
inline double level_coord(double c, int level) {
  return (c + 0.5) / static_cast<double>(1 << level) - 0.5;
}

}  // namespace atsvo
