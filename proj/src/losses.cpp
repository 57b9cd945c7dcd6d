#include "fovex/losses.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "fovex/parallel.hpp"
#include "fovex/rng.hpp"

namespace fovex {

AugmentSample sample_augment(std::uint64_t seed) {
  rng::Stream stream(seed);
  AugmentSample a;
  a.value_scale = stream.uniform(0.8, 1.2);
  a.size_scale = stream.uniform(0.5, 1.8);
  return a;
}

std::pair<DepthMap, ImageFrame> apply_augment(const DepthMap& depth, const ImageFrame& image,
                                              const AugmentSample& a) {
  if (!std::isfinite(a.value_scale) || a.value_scale <= 0.0 || !std::isfinite(a.size_scale) ||
      a.size_scale <= 0.0)
    raise(Errc::bad_format, "augment scales must be positive");

  const int w = depth.width(), h = depth.height();
  const int nw = std::max(1, int(std::llround(w * a.size_scale)));
  const int nh = std::max(1, int(std::llround(h * a.size_scale)));

  std::vector<double> dv(size_t(nw) * nh, 0.0);
  std::vector<double> iv(size_t(nw) * nh * 3, 0.0);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < nh; ++y) {
    const double sv = (y + 0.5) * h / nh - 0.5;
    const int sy = std::clamp(int(std::llround(sv)), 0, h - 1);
    const double v = std::clamp(sv, 0.0, double(h - 1));
    for (int x = 0; x < nw; ++x) {
      const double su = (x + 0.5) * w / nw - 0.5;
      const int sx = std::clamp(int(std::llround(su)), 0, w - 1);
      const double u = std::clamp(su, 0.0, double(w - 1));
      const double d = depth.at(sx, sy);
      dv[size_t(y) * nw + x] = d > 0.0 ? d * a.value_scale : 0.0;
      for (int c = 0; c < 3; ++c)
        iv[(size_t(y) * nw + x) * 3 + c] = detail::bilinear(image, u, v, c);
    }
  }
  return {DepthMap(nw, nh, std::move(dv)), ImageFrame(nw, nh, std::move(iv))};
}

ImageFrame downsample_half(const ImageFrame& f) {
  const int w = f.width(), h = f.height();
  const int nw = std::max(1, w / 2), nh = std::max(1, h / 2);
  std::vector<double> out(size_t(nw) * nh * 3);
  for (int y = 0; y < nh; ++y)
    for (int x = 0; x < nw; ++x) {
      const int x1 = std::min(2 * x + 1, w - 1), y1 = std::min(2 * y + 1, h - 1);
      for (int c = 0; c < 3; ++c)
        out[(size_t(y) * nw + x) * 3 + c] =
            0.25 * (f.at(2 * x, 2 * y, c) + f.at(x1, 2 * y, c) + f.at(2 * x, y1, c) +
                    f.at(x1, y1, c));
    }
  return ImageFrame(nw, nh, std::move(out));
}

DepthMap downsample_half_depth(const DepthMap& d) {
  const int w = d.width(), h = d.height();
  const int nw = std::max(1, w / 2), nh = std::max(1, h / 2);
  std::vector<double> out(size_t(nw) * nh, 0.0);
  for (int y = 0; y < nh; ++y)
    for (int x = 0; x < nw; ++x) {
      const int x1 = std::min(2 * x + 1, w - 1), y1 = std::min(2 * y + 1, h - 1);
      const double block[4] = {d.at(2 * x, 2 * y), d.at(x1, 2 * y), d.at(2 * x, y1),
                               d.at(x1, y1)};
      for (double v : block)
        if (v > 0.0) {
          out[size_t(y) * nw + x] = v;
          break;
        }
    }
  return DepthMap(nw, nh, std::move(out));
}

std::vector<ImageFrame> image_pyramid(const ImageFrame& f, int levels) {
  std::vector<ImageFrame> pyr{f};
  for (int s = 1; s < levels; ++s) pyr.push_back(downsample_half(pyr.back()));
  return pyr;
}

std::vector<DepthMap> depth_pyramid(const DepthMap& d, int levels) {
  std::vector<DepthMap> pyr{d};
  for (int s = 1; s < levels; ++s) pyr.push_back(downsample_half_depth(pyr.back()));
  return pyr;
}

double loss_photometric_multiscale(const ImageFrame& frame_prev, const ImageFrame& frame_target,
                                   const ImageFrame& frame_next,
                                   std::span<const DepthMap> depth_pyramid,
                                   const PoseSE3& pose_to_prev, const PoseSE3& pose_to_next,
                                   const CameraIntrinsics& intrinsics, const LossWeights& w) {
  if (depth_pyramid.empty()) raise(Errc::dimension_mismatch, "depth pyramid is empty");
  if (depth_pyramid.size() > w.scale_weights.size())
    raise(Errc::dimension_mismatch, "more pyramid levels than scale weights");
  if (!frame_prev.same_size(frame_target) || !frame_next.same_size(frame_target))
    raise(Errc::dimension_mismatch, "frames differ in size");
  if (depth_pyramid[0].width() != frame_target.width() ||
      depth_pyramid[0].height() != frame_target.height())
    raise(Errc::dimension_mismatch, "pyramid level 0 does not match the frames");

  const int levels = int(depth_pyramid.size());
  const auto pyr_prev = image_pyramid(frame_prev, levels);
  const auto pyr_tgt = image_pyramid(frame_target, levels);
  const auto pyr_next = image_pyramid(frame_next, levels);
  const int w0 = frame_target.width(), h0 = frame_target.height();

  double total = 0.0;
  for (int s = 0; s < levels; ++s) {
    const DepthMap& depth = depth_pyramid[size_t(s)];
    const ImageFrame& tgt = pyr_tgt[size_t(s)];
    if (depth.width() != tgt.width() || depth.height() != tgt.height())
      raise(Errc::dimension_mismatch, "pyramid level does not halve dimensions");
    const CameraIntrinsics level_k =
        intrinsics.scaled(double(tgt.width()) / w0, double(tgt.height()) / h0);

    const WarpResult wp = warp(pyr_prev[size_t(s)], depth, {level_k, pose_to_prev});
    const WarpResult wn = warp(pyr_next[size_t(s)], depth, {level_k, pose_to_next});
    const ScalarMap fp = photometric_map(wp.image, tgt, w.alpha, w.photometric_norm);
    const ScalarMap fn = photometric_map(wn.image, tgt, w.alpha, w.photometric_norm);

    struct Acc {
      double sum = 0;
      long n = 0;
      Acc& operator+=(const Acc& o) {
        sum += o.sum;
        n += o.n;
        return *this;
      }
    };
    const int lw = tgt.width();
    const Acc acc = reduce_rows<Acc>(tgt.height(), [&](int y) {
      Acc a;
      for (int x = 0; x < lw; ++x) {
        const bool vp = wp.mask.at(x, y), vn = wn.mask.at(x, y);
        if (!vp && !vn) continue;
        double f;
        if (vp && vn)
          f = std::min(fp.at(x, y), fn.at(x, y));
        else
          f = vp ? fp.at(x, y) : fn.at(x, y);
        a.sum += f;
        ++a.n;
      }
      return a;
    });
    if (acc.n > 0) total += w.scale_weights[size_t(s)] * (acc.sum / double(acc.n));
  }
  return total;
}

double loss_partial(std::span<const DepthMap> depth_pyramid, const DepthMap& partial) {
  if (depth_pyramid.empty()) raise(Errc::dimension_mismatch, "depth pyramid is empty");
  if (depth_pyramid[0].width() != partial.width() ||
      depth_pyramid[0].height() != partial.height())
    raise(Errc::dimension_mismatch, "partial does not match pyramid level 0");
  if (valid_mask(partial).popcount() == 0)
    raise(Errc::empty_mask, "partial depth has no valid pixel");

  double total = 0.0;
  DepthMap level_partial = partial;
  for (size_t s = 0; s < depth_pyramid.size(); ++s) {
    if (s > 0) level_partial = downsample_half_depth(level_partial);
    const DepthMap& pred = depth_pyramid[s];
    if (!pred.same_size(level_partial))
      raise(Errc::dimension_mismatch, "pyramid level does not halve dimensions");
    double sum = 0.0;
    long n = 0;
    for (int y = 0; y < pred.height(); ++y)
      for (int x = 0; x < pred.width(); ++x)
        if (level_partial.valid(x, y)) {
          sum += std::abs(pred.at(x, y) - level_partial.at(x, y));
          ++n;
        }
    if (n > 0) total += sum / double(n);
  }
  return total;
}

double loss_smooth(const DepthMap& depth, const ImageFrame& image) {
  if (depth.width() != image.width() || depth.height() != image.height())
    raise(Errc::dimension_mismatch, "loss_smooth inputs differ in size");
  const int w = depth.width(), h = depth.height();

  double mean = 0.0;
  for (double v : depth.values()) mean += v;
  mean /= double(depth.values().size());
  if (!(mean > 0.0)) return 0.0;

  struct Acc {
    double sx = 0, sy = 0;
    Acc& operator+=(const Acc& o) {
      sx += o.sx;
      sy += o.sy;
      return *this;
    }
  };
  const Acc acc = reduce_rows<Acc>(h, [&](int y) {
    Acc a;
    for (int x = 0; x < w; ++x) {
      if (x + 1 < w) {
        const double dd = std::abs(depth.at(x + 1, y) - depth.at(x, y)) / mean;
        double di = 0.0;
        for (int c = 0; c < 3; ++c) di += std::abs(image.at(x + 1, y, c) - image.at(x, y, c));
        a.sx += dd * std::exp(-di / 3.0);
      }
      if (y + 1 < h) {
        const double dd = std::abs(depth.at(x, y + 1) - depth.at(x, y)) / mean;
        double di = 0.0;
        for (int c = 0; c < 3; ++c) di += std::abs(image.at(x, y + 1, c) - image.at(x, y, c));
        a.sy += dd * std::exp(-di / 3.0);
      }
    }
    return a;
  });
  double loss = 0.0;
  if (w > 1) loss += acc.sx / (double(w - 1) * h);
  if (h > 1) loss += acc.sy / (double(w) * (h - 1));
  return loss;
}

double loss_stn(const ImageFrame& frame_prev, const ImageFrame& frame_target,
                const ImageFrame& frame_next, std::span<const DepthMap> depth_pyramid,
                const DepthMap& partial, const PoseSE3& pose_to_prev, const PoseSE3& pose_to_next,
                const CameraIntrinsics& intrinsics, const LossWeights& w) {
  double total = 0.0;
  if (w.w_pe != 0.0)
    total += w.w_pe * loss_photometric_multiscale(frame_prev, frame_target, frame_next,
                                                  depth_pyramid, pose_to_prev, pose_to_next,
                                                  intrinsics, w);
  if (w.w_p != 0.0) total += w.w_p * loss_partial(depth_pyramid, partial);
  if (w.w_s != 0.0 && !depth_pyramid.empty())
    total += w.w_s * loss_smooth(depth_pyramid[0], frame_target);
  return total;
}

DepthMap pseudo_depth(const DepthMap& blur, const DepthMap& partial) {
  if (!blur.same_size(partial)) raise(Errc::dimension_mismatch, "pseudo_depth maps differ in size");

  std::vector<double> part_vals, blur_vals;
  for (int y = 0; y < blur.height(); ++y)
    for (int x = 0; x < blur.width(); ++x)
      if (partial.valid(x, y)) {
        part_vals.push_back(partial.at(x, y));
        if (blur.valid(x, y)) blur_vals.push_back(blur.at(x, y));
      }
  if (blur_vals.empty())
    raise(Errc::empty_overlap, "partial mask does not overlap the blur depth");

  auto median_of = [](std::vector<double>& v) {
    const size_t hi = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + hi, v.end());
    const double upper = v[hi];
    if (v.size() % 2 == 1) return upper;
    return (*std::max_element(v.begin(), v.begin() + hi) + upper) / 2.0;
  };
  const double s = median_of(part_vals) / median_of(blur_vals);

  std::vector<double> out(blur.values().size(), 0.0);
  for (size_t i = 0; i < out.size(); ++i)
    if (blur.values()[i] > 0.0) out[i] = blur.values()[i] * s;
  return DepthMap(blur.width(), blur.height(), std::move(out));
}

double loss_pseudo(const DepthMap& pseudo, const DepthMap& prediction, double alpha) {
  if (!pseudo.same_size(prediction)) raise(Errc::dimension_mismatch, "loss_pseudo maps differ");
  if (alpha < 0.0 || alpha > 1.0) raise(Errc::bad_format, "alpha must lie in [0,1]");

  double peak = 0.0;
  for (double v : pseudo.values()) peak = std::max(peak, v);
  for (double v : prediction.values()) peak = std::max(peak, v);
  if (!(peak > 0.0)) return 0.0;

  const int w = pseudo.width(), h = pseudo.height();
  std::vector<double> a(size_t(w) * h), b(size_t(w) * h);
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] = pseudo.values()[i] / peak;
    b[i] = prediction.values()[i] / peak;
  }
  const ScalarMap sa(w, h, std::move(a));
  const ScalarMap sb(w, h, std::move(b));
  const ScalarMap s = ssim_single(sa, sb);

  double sum = 0.0;
  long n = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!pseudo.valid(x, y) || !prediction.valid(x, y)) continue;
      sum += 0.5 * alpha * (1.0 - s.at(x, y)) + std::abs(sa.at(x, y) - sb.at(x, y));
      ++n;
    }
  if (n == 0) raise(Errc::empty_mask, "loss_pseudo has no mutually valid pixel");
  return sum / double(n);
}

double gan_loss_eval(std::span<const double> real_scores, std::span<const double> fake_scores) {
  double total = 0.0;
  for (double r : real_scores) {
    if (!(r > 0.0) || !(r < 1.0)) raise(Errc::score_out_of_range, "real score outside (0,1)");
    total += std::log(r);
  }
  for (double f : fake_scores) {
    if (!(f > 0.0) || !(f < 1.0)) raise(Errc::score_out_of_range, "fake score outside (0,1)");
    total += std::log(1.0 - f);
  }
  return total;
}

double loss_ppg(double photometric_gen, double pseudo, double gan, const LossWeights& w) {
  return w.w_peg * photometric_gen + w.w_pse * pseudo + w.w_g * gan;
}

}  // namespace fovex
