#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fovex/core.hpp"

// Standard depth-evaluation metrics (Abs Rel, Sq Rel, RMSE, RMSE log and the
// delta thresholds) with the three scale-correction protocols.

namespace fovex {

enum class ScaleMode { median_per_image, fixed, from_partial };  // M | F | P

struct ScaleProtocol {
  ScaleMode mode = ScaleMode::median_per_image;
  double fixed_scale = 1.0;  // F only
};

char protocol_letter(ScaleMode mode);
ScaleMode protocol_from_letter(char letter);

/// Pixels survive when min < gt < max (applied to ground truth only).
struct RangeFilter {
  std::optional<double> min_m;
  std::optional<double> max_m;
};

struct MetricReport {
  double abs_rel = 0, sq_rel = 0, rmse = 0, rmse_log = 0;
  double delta1 = 0, delta2 = 0, delta3 = 0;
  long n_valid = 0;
  double scale_applied = 1.0;
  char protocol = '-';
  RangeFilter range;
};

/// Applies the scale-correction protocol and returns (scale * pred, scale).
///   M: median(gt valid) / median(pred on gt-valid pixels)
///   P: median(partial valid) / median(pred on partial-valid pixels)
///   F: the configured fixed scale
std::pair<DepthMap, double> correct_scale(const DepthMap& pred, const DepthMap* gt,
                                          const DepthMap* partial, const ScaleProtocol& proto);

/// All seven metrics over mutually valid pixels after range filtering.
/// Predictions are clamped to [1e-3, 200] m for the log metric only.
MetricReport evaluate(const DepthMap& pred, const DepthMap& gt, const RangeFilter& filter = {});

/// correct_scale followed by evaluate, with protocol metadata stamped in.
MetricReport evaluate_with_protocol(const DepthMap& pred, const DepthMap& gt,
                                    const DepthMap* partial, const ScaleProtocol& proto,
                                    const RangeFilter& filter = {});

std::string csv_header();
std::string csv_row(const std::string& image_id, const MetricReport& r);

/// Unweighted mean of per-image reports (n_valid summed).
MetricReport aggregate(std::span<const MetricReport> reports);

}  // namespace fovex
