#include "fovex/geometry.hpp"

#include <cmath>

#include "detail.hpp"
#include "fovex/parallel.hpp"

namespace fovex {

CameraIntrinsics::CameraIntrinsics(double fx, double fy, double cx, double cy)
    : fx_(fx), fy_(fy), cx_(cx), cy_(cy) {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy))
    raise(Errc::bad_format, "focal lengths must be positive");
}

PoseSE3::PoseSE3(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
    : r_(rotation), t_(translation) {
  const double ortho = (r_.transpose() * r_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (ortho > 1e-9 || std::abs(r_.determinant() - 1.0) > 1e-9)
    raise(Errc::bad_format, "rotation must be orthonormal with determinant +1");
}

PoseSE3 scale_translation(const PoseSE3& p, double s) {
  if (!std::isfinite(s) || s <= 0.0)
    raise(Errc::non_positive_scale, "translation scale must be finite and > 0");
  return PoseSE3(p.rotation(), p.translation() * s);
}

WarpResult warp(const ImageFrame& src, const DepthMap& depth_tgt, const CameraRig& rig) {
  if (src.width() <= 0 || depth_tgt.width() <= 0)
    raise(Errc::dimension_mismatch, "warp inputs are empty");
  const int w = depth_tgt.width();
  const int h = depth_tgt.height();
  const double fx = rig.intrinsics.fx(), fy = rig.intrinsics.fy();
  const double cx = rig.intrinsics.cx(), cy = rig.intrinsics.cy();
  const Eigen::Matrix3d R = rig.relative_pose.rotation();
  const Eigen::Vector3d t = rig.relative_pose.translation();

  std::vector<double> out(size_t(w) * h * 3, 0.0);
  std::vector<std::uint8_t> mask(size_t(w) * h, 0);

#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double d = depth_tgt.at(x, y);
      if (!(d > 0.0)) continue;
      const Eigen::Vector3d ray((x - cx) / fx * d, (y - cy) / fy * d, d);
      const Eigen::Vector3d p = R * ray + t;
      if (p.z() <= 1e-12) continue;
      const double u = fx * (p.x() / p.z()) + cx;
      const double v = fy * (p.y() / p.z()) + cy;
      if (u < 0.0 || u > src.width() - 1 || v < 0.0 || v > src.height() - 1) continue;
      const size_t i = size_t(y) * w + x;
      for (int c = 0; c < 3; ++c) out[i * 3 + c] = detail::bilinear(src, u, v, c);
      mask[i] = 1;
    }
  }
  return WarpResult{ImageFrame(w, h, std::move(out)), BinaryMask(w, h, std::move(mask))};
}

namespace {

constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

// Window statistics over a 3x3 box with reflect-101 borders; one SSIM value
// per pixel per channel, averaged over channels.
template <int Channels, class At>
std::vector<double> ssim_values(int w, int h, At a, At b) {
  std::vector<double> out(size_t(w) * h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int c = 0; c < Channels; ++c) {
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          const int yy = detail::mirror(y + dy, h);
          for (int dx = -1; dx <= 1; ++dx) {
            const int xx = detail::mirror(x + dx, w);
            const double va = a(xx, yy, c);
            const double vb = b(xx, yy, c);
            sa += va;
            sb += vb;
            saa += va * va;
            sbb += vb * vb;
            sab += va * vb;
          }
        }
        const double n = 9.0;
        const double mua = sa / n, mub = sb / n;
        const double vara = saa / n - mua * mua;
        const double varb = sbb / n - mub * mub;
        const double cov = sab / n - mua * mub;
        acc += ((2.0 * mua * mub + kSsimC1) * (2.0 * cov + kSsimC2)) /
               ((mua * mua + mub * mub + kSsimC1) * (vara + varb + kSsimC2));
      }
      out[size_t(y) * w + x] = acc / Channels;
    }
  }
  return out;
}

}  // namespace

ScalarMap ssim(const ImageFrame& a, const ImageFrame& b) {
  if (!a.same_size(b)) raise(Errc::dimension_mismatch, "ssim inputs differ in size");
  auto at_a = [&](int x, int y, int c) { return a.at(x, y, c); };
  auto at_b = [&](int x, int y, int c) { return b.at(x, y, c); };
  return ScalarMap(a.width(), a.height(),
                   ssim_values<3, decltype(at_a)>(a.width(), a.height(), at_a, at_b));
}

ScalarMap ssim_single(const ScalarMap& a, const ScalarMap& b) {
  if (a.width() != b.width() || a.height() != b.height())
    raise(Errc::dimension_mismatch, "ssim inputs differ in size");
  auto at_a = [&](int x, int y, int) { return a.at(x, y); };
  auto at_b = [&](int x, int y, int) { return b.at(x, y); };
  return ScalarMap(a.width(), a.height(),
                   ssim_values<1, decltype(at_a)>(a.width(), a.height(), at_a, at_b));
}

ScalarMap photometric_map(const ImageFrame& warped, const ImageFrame& target, double alpha,
                          Norm norm) {
  if (!warped.same_size(target))
    raise(Errc::dimension_mismatch, "photometric inputs differ in size");
  if (alpha < 0.0 || alpha > 1.0) raise(Errc::bad_format, "alpha must lie in [0,1]");

  const ScalarMap s = ssim(warped, target);
  const int w = warped.width(), h = warped.height();
  std::vector<double> out(size_t(w) * h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double diff = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double d = warped.at(x, y, c) - target.at(x, y, c);
        diff += norm == Norm::l1 ? std::abs(d) : d * d;
      }
      diff /= 3.0;
      if (norm == Norm::l2) diff = std::sqrt(diff);
      out[size_t(y) * w + x] = 0.5 * alpha * (1.0 - s.at(x, y)) + diff;
    }
  return ScalarMap(w, h, std::move(out));
}

double photometric_error(const ImageFrame& warped, const ImageFrame& target,
                         const BinaryMask& mask, double alpha, Norm norm) {
  if (mask.width() != warped.width() || mask.height() != warped.height())
    raise(Errc::dimension_mismatch, "photometric_error mask differs in size");
  const ScalarMap f = photometric_map(warped, target, alpha, norm);
  struct Acc {
    double sum = 0;
    long n = 0;
    Acc& operator+=(const Acc& o) {
      sum += o.sum;
      n += o.n;
      return *this;
    }
  };
  const int w = warped.width();
  const Acc total = reduce_rows<Acc>(warped.height(), [&](int y) {
    Acc acc;
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      acc.sum += f.at(x, y);
      ++acc.n;
    }
    return acc;
  });
  if (total.n == 0) raise(Errc::empty_mask, "photometric_error mask is empty");
  return total.sum / double(total.n);
}

}  // namespace fovex
