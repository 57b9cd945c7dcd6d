#include "fovex/propagation.hpp"

#include <cmath>

namespace fovex {

StageSchedule::StageSchedule(std::vector<Rect> stages, int frame_width, int frame_height)
    : stages_(std::move(stages)), frame_w_(frame_width), frame_h_(frame_height) {
  if (stages_.size() < 2) raise(Errc::degenerate_rect, "schedule needs at least one expansion");
  for (size_t i = 0; i + 1 < stages_.size(); ++i)
    if (!stages_[i + 1].contains(stages_[i]))
      raise(Errc::degenerate_rect, "schedule stages must be nested");
  const Rect full(0, 0, frame_w_, frame_h_);
  if (!(stages_.back() == full))
    raise(Errc::degenerate_rect, "final schedule stage must be the full frame");
}

StageSchedule build_schedule(int full_w, int full_h, const Rect& partial_rect, int count) {
  if (count < 1) raise(Errc::degenerate_rect, "stage count must be >= 1");
  if (!partial_rect.inside_frame(full_w, full_h))
    raise(Errc::degenerate_rect, "partial rect exceeds the frame");

  const int left0 = partial_rect.x0();
  const int top0 = partial_rect.y0();
  const int right0 = full_w - partial_rect.x1();
  const int bottom0 = full_h - partial_rect.y1();

  std::vector<Rect> stages;
  stages.reserve(size_t(count) + 1);
  for (int i = 0; i <= count; ++i) {
    const double keep = 1.0 - double(i) / double(count);
    const int l = int(std::llround(left0 * keep));
    const int t = int(std::llround(top0 * keep));
    const int r = int(std::llround(right0 * keep));
    const int b = int(std::llround(bottom0 * keep));
    stages.emplace_back(l, t, full_w - l - r, full_h - t - b);
  }
  return StageSchedule(std::move(stages), full_w, full_h);
}

DepthMap scale_adjust(const DepthMap& blur, const DepthMap& anchor) {
  if (!blur.same_size(anchor))
    raise(Errc::dimension_mismatch, "scale_adjust maps differ in size");
  const double anchor_median = masked_median(anchor);
  const double blur_median = masked_median(blur);
  if (!(blur_median > 0.0)) raise(Errc::zero_median, "blur median is not positive");
  const double ratio = anchor_median / blur_median;

  const auto& src = blur.values();
  std::vector<double> out(src.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(src.size()); ++i)
    if (src[size_t(i)] > 0.0) out[size_t(i)] = src[size_t(i)] * ratio;
  return DepthMap(blur.width(), blur.height(), std::move(out));
}

DepthMap mix(const DepthMap& refined, const DepthMap& scaled) {
  if (!refined.same_size(scaled)) raise(Errc::dimension_mismatch, "mix maps differ in size");
  const auto& a = refined.values();
  const auto& b = scaled.values();
  std::vector<double> out(a.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(a.size()); ++i)
    out[size_t(i)] = a[size_t(i)] > 0.0 ? a[size_t(i)] : b[size_t(i)];
  return DepthMap(refined.width(), refined.height(), std::move(out));
}

DepthMap run_stage(const StageState& state) {
  return mix(state.refined, scale_adjust(state.blur, state.refined));
}

}  // namespace fovex
