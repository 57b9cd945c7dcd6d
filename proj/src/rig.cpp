#include "fovex/rig.hpp"

#include <cmath>

namespace fovex {

namespace {

double deg2rad(double d) { return d * M_PI / 180.0; }

}  // namespace

HardwareRig default_rig() {
  const int w = 1536, h = 1024;
  const double cam_fov_w = 41.3, cam_fov_h = 31.3;
  const double lidar_fov_w = 14.5, lidar_fov_h = 16.2;

  const double fx = (w / 2.0) / std::tan(deg2rad(cam_fov_w) / 2.0);
  const double fy = (h / 2.0) / std::tan(deg2rad(cam_fov_h) / 2.0);

  const double frac_w = std::tan(deg2rad(lidar_fov_w) / 2.0) / std::tan(deg2rad(cam_fov_w) / 2.0);
  const double frac_h = std::tan(deg2rad(lidar_fov_h) / 2.0) / std::tan(deg2rad(cam_fov_h) / 2.0);

  // Even rect dimensions keep the LiDAR region exactly concentric with the frame.
  const int rw = 2 * int(std::llround(w * frac_w / 2.0));
  const int rh = 2 * int(std::llround(h * frac_h / 2.0));
  const Rect lidar_rect((w - rw) / 2, (h - rh) / 2, rw, rh);

  return HardwareRig{w,
                     h,
                     CameraIntrinsics(fx, fy, w / 2.0, h / 2.0),
                     cam_fov_w,
                     cam_fov_h,
                     lidar_fov_w,
                     lidar_fov_h,
                     frac_w,
                     frac_h,
                     lidar_rect,
                     3.0,
                     200.0};
}

}  // namespace fovex
