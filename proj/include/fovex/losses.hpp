#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fovex/core.hpp"
#include "fovex/geometry.hpp"

// Forward evaluators for the self-supervision losses plus the discriminator
// data-augmentation sampler. Evaluators only: no gradients, no networks.

namespace fovex {

struct LossWeights {
  double w_pe = 1.0, w_p = 1.0, w_s = 1.0;     // depth-net mix
  double w_peg = 1.0, w_pse = 1.0, w_g = 1.0;  // generator mix
  std::array<double, 5> scale_weights{1.0, 0.5, 0.25, 0.125, 0.0625};
  double alpha = 0.85;         // SSIM weight of the photometric term
  double alpha_pseudo = 0.95;  // elevated SSIM weight for the pseudo-depth loss
  Norm photometric_norm = Norm::l1;
};

struct AugmentSample {
  double value_scale;  // drawn from U[0.8, 1.2]
  double size_scale;   // drawn from U[0.5, 1.8]
};

AugmentSample sample_augment(std::uint64_t seed);

/// Depth values multiplied by the value scale; both maps resized by the size
/// scale (bilinear for the image, valid-aware nearest for depth).
std::pair<DepthMap, ImageFrame> apply_augment(const DepthMap& depth, const ImageFrame& image,
                                              const AugmentSample& a);

/// 2x2 box average; odd edges clamp.
ImageFrame downsample_half(const ImageFrame& f);

/// Valid-aware nearest: a coarse pixel takes the first valid pixel of its
/// 2x2 block (row-major), 0 when the block has none.
DepthMap downsample_half_depth(const DepthMap& d);

std::vector<ImageFrame> image_pyramid(const ImageFrame& f, int levels);
std::vector<DepthMap> depth_pyramid(const DepthMap& d, int levels);

/// Multi-scale three-frame photometric loss: per scale, per pixel minimum of
/// the photometric map against the two warped neighbor frames, weighted by
/// scale_weights. Intrinsics are rescaled per pyramid level.
double loss_photometric_multiscale(const ImageFrame& frame_prev, const ImageFrame& frame_target,
                                   const ImageFrame& frame_next,
                                   std::span<const DepthMap> depth_pyramid,
                                   const PoseSE3& pose_to_prev, const PoseSE3& pose_to_next,
                                   const CameraIntrinsics& intrinsics, const LossWeights& w);

/// Sum over scales of the masked mean |D(s) - partial(s)|; partial is
/// downsampled per level with valid-aware nearest sampling.
double loss_partial(std::span<const DepthMap> depth_pyramid, const DepthMap& partial);

/// Edge-aware smoothness: |dx D|e^{-|dx I|} + |dy D|e^{-|dy I|} on
/// mean-normalized depth, averaged over interior pixels.
double loss_smooth(const DepthMap& depth, const ImageFrame& image);

/// Weighted sum of photometric, partial and smoothness terms. Terms with a
/// zero weight are not evaluated.
double loss_stn(const ImageFrame& frame_prev, const ImageFrame& frame_target,
                const ImageFrame& frame_next, std::span<const DepthMap> depth_pyramid,
                const DepthMap& partial, const PoseSE3& pose_to_prev, const PoseSE3& pose_to_next,
                const CameraIntrinsics& intrinsics, const LossWeights& w);

/// Rescales `blur` so its median on the partial mask matches the partial's
/// median. Throws empty_overlap when the masks do not intersect.
DepthMap pseudo_depth(const DepthMap& blur, const DepthMap& partial);

/// Structure-weighted comparison of two depth maps normalized to [0,1] by a
/// shared maximum; alpha defaults higher than the photometric mix.
double loss_pseudo(const DepthMap& pseudo, const DepthMap& prediction, double alpha);

/// Non-saturating GAN cross entropy for externally supplied discriminator
/// scores: sum of log(real) plus log(1 - fake). Scores must lie in (0,1).
double gan_loss_eval(std::span<const double> real_scores, std::span<const double> fake_scores);

/// Generator mix: w_peg * photometric + w_pse * pseudo + w_g * gan.
double loss_ppg(double photometric_gen, double pseudo, double gan, const LossWeights& w);

}  // namespace fovex
