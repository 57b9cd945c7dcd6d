#include "fovex/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fovex {

namespace {

double pattern_value(const AlbedoPattern& p, double su, double sv, int channel) {
  switch (p.kind) {
    case AlbedoPattern::Kind::constant:
      return p.base;
    case AlbedoPattern::Kind::checker: {
      const long cells = long(std::floor(su / p.cell)) + long(std::floor(sv / p.cell));
      return ((cells % 2 + 2) % 2 == 0) ? p.base + p.amplitude : p.base - p.amplitude;
    }
    case AlbedoPattern::Kind::sine: {
      const double ph = p.phase[size_t(channel)];
      return p.base + 0.5 * p.amplitude *
                          (std::sin(2.0 * M_PI * su / p.cell + ph) +
                           std::sin(2.0 * M_PI * sv / p.cell + 1.3 * ph));
    }
  }
  return p.base;
}

struct Hit {
  double t = std::numeric_limits<double>::infinity();
  const Quad* quad = nullptr;
  double su = 0, sv = 0;  // surface coordinates in meters
  Eigen::Vector3d normal;
};

bool intersect(const Quad& q, const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
               Hit& hit) {
  const Eigen::Vector3d n = q.u.cross(q.v);
  const double denom = n.dot(dir);
  if (std::abs(denom) < 1e-14) return false;
  const double t = n.dot(q.origin - origin) / denom;
  if (t <= 1e-9 || t >= hit.t) return false;

  const Eigen::Vector3d p = origin + t * dir - q.origin;
  const double uu = q.u.squaredNorm(), vv = q.v.squaredNorm();
  const double a = p.dot(q.u) / uu;
  const double b = p.dot(q.v) / vv;
  if (!q.infinite && (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)) return false;

  hit.t = t;
  hit.quad = &q;
  hit.su = a * std::sqrt(uu);
  hit.sv = b * std::sqrt(vv);
  hit.normal = n.normalized();
  return true;
}

}  // namespace

void SyntheticScene::add_box(const Eigen::Vector3d& center, const Eigen::Vector3d& size,
                             const AlbedoPattern& albedo) {
  const Eigen::Vector3d h = size / 2.0;
  const Eigen::Vector3d ex(size.x(), 0, 0), ey(0, size.y(), 0), ez(0, 0, size.z());
  // Six faces, each spanned from its lower corner.
  surfaces.push_back({center + Eigen::Vector3d(-h.x(), -h.y(), -h.z()), ex, ey, false, albedo});
  surfaces.push_back({center + Eigen::Vector3d(-h.x(), -h.y(), h.z()), ex, ey, false, albedo});
  surfaces.push_back({center + Eigen::Vector3d(-h.x(), -h.y(), -h.z()), ex, ez, false, albedo});
  surfaces.push_back({center + Eigen::Vector3d(-h.x(), h.y(), -h.z()), ex, ez, false, albedo});
  surfaces.push_back({center + Eigen::Vector3d(-h.x(), -h.y(), -h.z()), ey, ez, false, albedo});
  surfaces.push_back({center + Eigen::Vector3d(h.x(), -h.y(), -h.z()), ey, ez, false, albedo});
}

RenderOut render_scene(const SyntheticScene& scene, int time_index) {
  if (time_index < 0 || time_index >= int(scene.frame_poses.size()))
    raise(Errc::out_of_bounds, "time index outside the scene's frame poses");
  const PoseSE3& pose = scene.frame_poses[size_t(time_index)];
  const Eigen::Matrix3d R = pose.rotation();
  const Eigen::Vector3d C = pose.translation();
  const double fx = scene.intrinsics.fx(), fy = scene.intrinsics.fy();
  const double cx = scene.intrinsics.cx(), cy = scene.intrinsics.cy();
  const Eigen::Vector3d light = scene.light_dir.normalized();

  const int w = scene.width, h = scene.height;
  std::vector<double> depth(size_t(w) * h, 0.0);
  std::vector<double> image(size_t(w) * h * 3, 0.0);
  bool miss = false;

#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      // Unit-z camera ray makes the intersection parameter the z-depth.
      const Eigen::Vector3d dir_cam((x - cx) / fx, (y - cy) / fy, 1.0);
      const Eigen::Vector3d dir = R * dir_cam;
      Hit hit;
      for (const Quad& q : scene.surfaces) intersect(q, C, dir, hit);
      if (!hit.quad) {
#pragma omp atomic write
        miss = true;
        continue;
      }
      depth[size_t(y) * w + x] = hit.t;
      Eigen::Vector3d n = hit.normal;
      if (n.dot(dir) > 0.0) n = -n;  // face the camera
      const double lambert = std::max(0.0, n.dot(-light));
      const double shade = 0.25 + 0.75 * lambert;
      for (int c = 0; c < 3; ++c) {
        const double albedo = pattern_value(hit.quad->albedo, hit.su, hit.sv, c);
        image[(size_t(y) * w + x) * 3 + c] = std::clamp(albedo * shade, 0.0, 1.0);
      }
    }
  if (miss) raise(Errc::no_intersection, "a camera ray misses every surface");
  return RenderOut{ImageFrame(w, h, std::move(image)), DepthMap(w, h, std::move(depth))};
}

PoseSE3 relative_pose(const SyntheticScene& scene, int target_index, int source_index) {
  if (target_index < 0 || source_index < 0 || target_index >= int(scene.frame_poses.size()) ||
      source_index >= int(scene.frame_poses.size()))
    raise(Errc::out_of_bounds, "frame index outside the scene's poses");
  const PoseSE3& tgt = scene.frame_poses[size_t(target_index)];
  const PoseSE3& src = scene.frame_poses[size_t(source_index)];
  return src.inverse().compose(tgt);
}

SyntheticScene make_default_scene(int width, int height) {
  SyntheticScene s;
  s.width = width;
  s.height = height;
  const double fov = 60.0 * M_PI / 180.0;
  const double f = (width / 2.0) / std::tan(fov / 2.0);
  s.intrinsics = CameraIntrinsics(f, f, (width - 1) / 2.0, (height - 1) / 2.0);

  AlbedoPattern backdrop;
  backdrop.cell = 3.0;
  backdrop.amplitude = 0.35;
  AlbedoPattern mid;
  mid.cell = 1.2;
  mid.amplitude = 0.3;
  mid.phase = {1.0, 3.0, 5.1};
  AlbedoPattern side;
  side.cell = 0.8;
  side.amplitude = 0.25;
  side.phase = {0.4, 2.6, 4.9};

  // Infinite backdrop guarantees full ray coverage for every frame pose.
  s.surfaces.push_back({{0, 0, 14.0}, {1, 0, 0}, {0, 1, 0}, true, backdrop});
  // Oblique mid-scene quad, left of center.
  s.surfaces.push_back({{-7.0, -4.0, 6.0}, {9.0, 0.0, 2.5}, {0.0, 8.0, 1.0}, false, mid});
  // Slanted quad on the right, closer.
  s.surfaces.push_back({{2.2, -3.0, 7.5}, {6.0, 0.0, -1.5}, {0.0, 6.5, 0.8}, false, side});

  AlbedoPattern boxp;
  boxp.kind = AlbedoPattern::Kind::checker;
  boxp.cell = 0.25;
  boxp.amplitude = 0.2;
  s.add_box({1.1, 0.9, 4.6}, {1.2, 1.2, 1.2}, boxp);

  auto yaw = [](double deg) {
    return Eigen::Matrix3d(Eigen::AngleAxisd(deg * M_PI / 180.0, Eigen::Vector3d::UnitY()));
  };
  s.frame_poses.push_back(PoseSE3(yaw(-0.4), {-0.06, 0.02, -0.12}));
  s.frame_poses.push_back(PoseSE3::identity());
  s.frame_poses.push_back(PoseSE3(yaw(0.4), {0.06, -0.02, 0.12}));
  s.light_dir = {0.3, -0.5, 0.8};
  return s;
}

}  // namespace fovex
