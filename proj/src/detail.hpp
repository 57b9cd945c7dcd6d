#pragma once

#include <cmath>

#include "fovex/core.hpp"

// Internal sampling helpers shared by the warp, resize and SSIM kernels.

namespace fovex::detail {

/// reflect-101 border index (edge pixel not duplicated).
inline int mirror(int i, int n) {
  if (n == 1) return 0;
  if (i < 0) return -i;
  if (i >= n) return 2 * n - 2 - i;
  return i;
}

/// Bilinear sample of one channel; caller guarantees u in [0,w-1], v in [0,h-1].
inline double bilinear(const ImageFrame& img, double u, double v, int c) {
  const int x0 = int(std::floor(u));
  const int y0 = int(std::floor(v));
  const int x1 = x0 + 1 < img.width() ? x0 + 1 : img.width() - 1;
  const int y1 = y0 + 1 < img.height() ? y0 + 1 : img.height() - 1;
  const double fx = u - x0;
  const double fy = v - y0;
  const double top = img.at(x0, y0, c) * (1.0 - fx) + img.at(x1, y0, c) * fx;
  const double bot = img.at(x0, y1, c) * (1.0 - fx) + img.at(x1, y1, c) * fx;
  return top * (1.0 - fy) + bot * fy;
}

}  // namespace fovex::detail
