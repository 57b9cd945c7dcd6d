#pragma once

#include <cstdint>
#include <optional>

#include "fovex/core.hpp"

// Simulation of small-FoV depth inputs by resampling a full ground-truth map.

namespace fovex {

enum class ResampleKind { center, sparse, random, bottom };

ResampleKind resample_kind_from_name(const std::string& name);
const char* resample_kind_name(ResampleKind kind);

struct ResampleMode {
  ResampleKind kind = ResampleKind::center;
  double frac_w = 0.5;  // region fraction per side, in (0,1]
  double frac_h = 0.5;
  double keep_rate = 0.25;            // sparse: per-pixel survival probability
  std::optional<Rect> random_bounds;  // random: placement region for the rect center;
                                      // defaults to the central third of the frame
  std::uint64_t seed = 0;
};

/// Small-FoV valid region embedded in the full frame, plus the region rect.
struct PartialDepth {
  DepthMap depth;
  Rect region;
};

/// center: keep the centered rect; sparse: center then per-pixel Bernoulli
/// keep; random: same-size rect with its center drawn uniformly inside the
/// bounds; bottom: rect anchored to the bottom edge, centered horizontally.
/// Never creates a valid pixel where gt is invalid.
PartialDepth resample(const DepthMap& gt, const ResampleMode& mode);

}  // namespace fovex
