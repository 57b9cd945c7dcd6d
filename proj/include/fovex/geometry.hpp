#pragma once

#include <Eigen/Dense>

#include "fovex/core.hpp"

// Projective camera model, reprojection warping and the SSIM/photometric
// kernel shared by all loss evaluators.

namespace fovex {

class CameraIntrinsics {
 public:
  CameraIntrinsics(double fx, double fy, double cx, double cy);

  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }

  /// Intrinsics for a frame resized by (sx, sy). Principal point is
  /// rescaled in the pixel-center convention.
  CameraIntrinsics scaled(double sx, double sy) const {
    return CameraIntrinsics(fx_ * sx, fy_ * sy, (cx_ + 0.5) * sx - 0.5, (cy_ + 0.5) * sy - 0.5);
  }

 private:
  double fx_, fy_, cx_, cy_;
};

/// Rigid transform x' = R x + t. The rotation is validated to be orthonormal
/// with determinant +1 (tolerance 1e-9).
class PoseSE3 {
 public:
  PoseSE3(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

  static PoseSE3 identity() { return PoseSE3(Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero()); }

  const Eigen::Matrix3d& rotation() const { return r_; }
  const Eigen::Vector3d& translation() const { return t_; }

  PoseSE3 inverse() const { return PoseSE3(r_.transpose(), -(r_.transpose() * t_)); }
  /// Composition: (*this) after `rhs`, i.e. x -> this->R (rhs.R x + rhs.t) + this->t.
  PoseSE3 compose(const PoseSE3& rhs) const {
    return PoseSE3(r_ * rhs.r_, r_ * rhs.t_ + t_);
  }

 private:
  Eigen::Matrix3d r_;
  Eigen::Vector3d t_;
};

struct CameraRig {
  CameraIntrinsics intrinsics;
  PoseSE3 relative_pose;  // maps target-camera coordinates to source-camera coordinates
};

/// Rotation unchanged, translation multiplied by s. Throws non_positive_scale
/// unless s is finite and > 0.
PoseSE3 scale_translation(const PoseSE3& p, double s);

struct WarpResult {
  ImageFrame image;
  BinaryMask mask;  // reprojection landed inside src AND target depth valid
};

/// Inverse warp: back-projects each target pixel through its depth, moves it
/// by the rig pose, projects into `src` and samples bilinearly. Pixels whose
/// reprojection leaves the source frame (or whose depth is invalid, or which
/// land behind the camera) are masked out and set to 0.
WarpResult warp(const ImageFrame& src, const DepthMap& depth_tgt, const CameraRig& rig);

/// Per-pixel SSIM over a 3x3 box window, reflect-101 borders, stabilizers
/// c1=0.01^2, c2=0.03^2 on the [0,1] range, averaged over channels.
ScalarMap ssim(const ImageFrame& a, const ImageFrame& b);

/// Single-channel SSIM with the same window; used for depth-structure losses.
ScalarMap ssim_single(const ScalarMap& a, const ScalarMap& b);

/// Per-pixel (alpha/2)(1-SSIM) + intensity difference. The intensity term is
/// the channel-mean absolute difference for l1, the channel RMS for l2.
ScalarMap photometric_map(const ImageFrame& warped, const ImageFrame& target, double alpha,
                          Norm norm = Norm::l1);

/// Mean over masked pixels of the photometric map. Throws empty_mask when
/// the mask has no set pixel.
double photometric_error(const ImageFrame& warped, const ImageFrame& target,
                         const BinaryMask& mask, double alpha, Norm norm = Norm::l1);

}  // namespace fovex
