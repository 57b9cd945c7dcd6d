#pragma once

#include "fovex/core.hpp"
#include "fovex/geometry.hpp"

namespace fovex {

/// Reference camera + small-FoV LiDAR geometry preset.
struct HardwareRig {
  int image_width;
  int image_height;
  CameraIntrinsics intrinsics;
  double camera_fov_w_deg, camera_fov_h_deg;
  double lidar_fov_w_deg, lidar_fov_h_deg;
  double frac_w, frac_h;  // LiDAR / camera frustum tangent ratios
  Rect lidar_rect;        // centered region covered by the LiDAR
  double min_range_m, max_range_m;
};

/// 1536x1024 camera with a 41.3x31.3 degree FoV and a centered 14.5x16.2
/// degree LiDAR region; the rect fraction per side is
/// tan(lidar_fov/2) / tan(camera_fov/2).
HardwareRig default_rig();

}  // namespace fovex
