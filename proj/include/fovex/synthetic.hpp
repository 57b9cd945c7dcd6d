#pragma once

#include <cstdint>
#include <vector>

#include "fovex/core.hpp"
#include "fovex/geometry.hpp"

// Analytic scene renderer used as the ground-truth oracle: textured planes
// and boxes, Lambertian shading, exact per-pixel ray intersection depth.

namespace fovex {

struct AlbedoPattern {
  enum class Kind { constant, checker, sine } kind = Kind::sine;
  double base = 0.5;       // mean intensity
  double amplitude = 0.3;  // modulation amplitude
  double cell = 1.0;       // pattern period in surface units (meters)
  std::array<double, 3> phase{0.0, 2.1, 4.2};  // per-channel phase offsets
};

/// Finite rectangle in world space: point(a,b) = origin + a*u + b*v for
/// a,b in [0,1]; set `infinite` to ignore the bounds.
struct Quad {
  Eigen::Vector3d origin;
  Eigen::Vector3d u;
  Eigen::Vector3d v;
  bool infinite = false;
  AlbedoPattern albedo;
};

struct SyntheticScene {
  int width = 256;
  int height = 256;
  CameraIntrinsics intrinsics{200.0, 200.0, 127.5, 127.5};
  std::vector<Quad> surfaces;
  Eigen::Vector3d light_dir{0.3, -0.5, 0.8};   // direction the light travels
  std::vector<PoseSE3> frame_poses;            // camera-to-world at t-1, t, t+1

  void add_box(const Eigen::Vector3d& center, const Eigen::Vector3d& size,
               const AlbedoPattern& albedo);
};

struct RenderOut {
  ImageFrame image;
  DepthMap depth;
};

/// Per-pixel nearest ray-surface intersection; depth is the camera-frame z.
/// Throws no_intersection when a ray misses every surface.
RenderOut render_scene(const SyntheticScene& scene, int time_index);

/// Pose mapping target-camera coordinates to source-camera coordinates.
PoseSE3 relative_pose(const SyntheticScene& scene, int target_index, int source_index);

/// Three-frame forward-motion scene over textured planes covering the
/// frustum; deterministic for a given size.
SyntheticScene make_default_scene(int width, int height);

}  // namespace fovex
