#pragma once

#include <vector>

#include "fovex/core.hpp"

// Multi-stage FoV expansion: stage scheduling, median-ratio scale adjustment
// and masked mixing of refined and coarse depth.

namespace fovex {

/// Nested crop rectangles defining the propagation stages. stages[0] is the
/// partial-depth FoV rect, the last rect is the full frame; count() is the
/// number of expansion steps.
class StageSchedule {
 public:
  StageSchedule(std::vector<Rect> stages, int frame_width, int frame_height);

  int count() const { return int(stages_.size()) - 1; }
  int frame_width() const { return frame_w_; }
  int frame_height() const { return frame_h_; }
  const Rect& stage(int i) const { return stages_[size_t(i)]; }
  const std::vector<Rect>& stages() const { return stages_; }

 private:
  std::vector<Rect> stages_;
  int frame_w_, frame_h_;
};

/// Per-side linear interpolation from `partial_rect` to the full frame in
/// `count` steps (margins shrink linearly, rounded to the nearest pixel).
StageSchedule build_schedule(int full_w, int full_h, const Rect& partial_rect, int count);

struct StageState {
  DepthMap refined;  // previous stage output, padded to the current stage size
  DepthMap blur;     // current-stage crop of the coarse depth
};

/// Multiplies every valid pixel of `blur` by median(anchor valid) /
/// median(blur valid); invalid pixels stay 0.
DepthMap scale_adjust(const DepthMap& blur, const DepthMap& anchor);

/// Where `refined` is valid take `refined`, elsewhere take `scaled`.
DepthMap mix(const DepthMap& refined, const DepthMap& scaled);

/// One propagation step: mix(refined, scale_adjust(blur, refined)).
DepthMap run_stage(const StageState& state);

}  // namespace fovex
