#pragma once

#include "atsvo/image.hpp"

// Data-parallel image kernels. Every kernel has an OpenMP variant (the
// default entry point) and a `_serial` reference used by the tests and the
// benchmark; both must produce bit-identical output.

namespace atsvo::kernels {

/// Mean filter over a (2r+1)^2 window, replicate borders, round half up.
/// radius 0 returns the input unchanged.
ImageU8 box_blur(const ImageU8& in, int radius);
ImageU8 box_blur_serial(const ImageU8& in, int radius);

/// Median over a (2r+1)^2 window, replicate borders. radius 0 is a copy.
ImageU8 median_blur(const ImageU8& in, int radius);
ImageU8 median_blur_serial(const ImageU8& in, int radius);

/// Gradient magnitude |∇I| with central differences, replicate borders.
ImageF gradient_magnitude(const ImageF& in);
ImageF gradient_magnitude_serial(const ImageF& in);

}  // namespace atsvo::kernels
