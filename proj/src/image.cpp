#include "atsvo/image.hpp"

namespace atsvo {

ImageF half_sample(const ImageF& in) {
  const int w = in.width() / 2;
  const int h = in.height() / 2;
  ImageF out(w, h);
  for (int y = 0; y < h; ++y) {
    const float* r0 = in.row(2 * y);
    const float* r1 = in.row(2 * y + 1);
    float* d = out.row(y);
    for (int x = 0; x < w; ++x)
      d[x] = 0.25f * (r0[2 * x] + r0[2 * x + 1] + r1[2 * x] + r1[2 * x + 1]);
  }
  return out;
}

Pyramid Pyramid::build(const ImageU8& base, int num_levels) {
  return build(to_float(base), num_levels);
}

Pyramid Pyramid::build(ImageF base, int num_levels) {
  Pyramid p;
  p.levels.reserve(num_levels);
  p.levels.push_back(std::move(base));
  for (int l = 1; l < num_levels; ++l) p.levels.push_back(half_sample(p.levels[l - 1]));
  return p;
}

}  // namespace atsvo
