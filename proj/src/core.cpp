#include "fovex/core.hpp"

#include <algorithm>
#include <cmath>

namespace fovex {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::empty_mask: return "EmptyMask";
    case Errc::out_of_bounds: return "OutOfBounds";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::non_positive_scale: return "NonPositiveScale";
    case Errc::zero_median: return "ZeroMedian";
    case Errc::degenerate_rect: return "DegenerateRect";
    case Errc::empty_distribution: return "EmptyDistribution";
    case Errc::oracle_unavailable: return "OracleUnavailable";
    case Errc::empty_overlap: return "EmptyOverlap";
    case Errc::score_out_of_range: return "ScoreOutOfRange";
    case Errc::missing_partial: return "MissingPartial";
    case Errc::bad_format: return "BadFormat";
    case Errc::bit_depth_mismatch: return "BitDepthMismatch";
    case Errc::degenerate_region: return "DegenerateRegion";
    case Errc::no_intersection: return "NoIntersection";
    case Errc::bad_config: return "BadConfig";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Rect::Rect(int x0, int y0, int width, int height) : x0_(x0), y0_(y0), w_(width), h_(height) {
  if (width <= 0 || height <= 0)
    raise(Errc::degenerate_rect, "rect dimensions must be positive, got " +
                                     std::to_string(width) + "x" + std::to_string(height));
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> values)
    : w_(width), h_(height), v_(std::move(values)) {
  if (w_ <= 0 || h_ <= 0 || v_.size() != size_t(w_) * h_)
    raise(Errc::dimension_mismatch, "mask buffer does not match its dimensions");
  for (auto& b : v_) b = b ? 1 : 0;
}

long BinaryMask::popcount() const {
  long n = 0;
  for (std::uint8_t b : v_) n += b;
  return n;
}

namespace {

void check_grid(int w, int h, size_t n, size_t channels) {
  if (w <= 0 || h <= 0 || n != size_t(w) * h * channels)
    raise(Errc::dimension_mismatch, "value buffer does not match grid dimensions");
}

}  // namespace

DepthMap::DepthMap(int width, int height) : w_(width), h_(height), v_(size_t(width) * height, 0.0) {
  check_grid(w_, h_, v_.size(), 1);
}

DepthMap::DepthMap(int width, int height, std::vector<double> values)
    : w_(width), h_(height), v_(std::move(values)) {
  check_grid(w_, h_, v_.size(), 1);
  for (double d : v_)
    if (!std::isfinite(d) || d < 0.0)
      raise(Errc::bad_format, "depth values must be finite and >= 0");
}

ImageFrame::ImageFrame(int width, int height)
    : w_(width), h_(height), v_(size_t(width) * height * 3, 0.0) {
  check_grid(w_, h_, v_.size(), 3);
}

ImageFrame::ImageFrame(int width, int height, std::vector<double> values)
    : w_(width), h_(height), v_(std::move(values)) {
  check_grid(w_, h_, v_.size(), 3);
  for (double x : v_)
    if (!std::isfinite(x) || x < 0.0 || x > 1.0)
      raise(Errc::bad_format, "image intensities must lie in [0,1]");
}

UncertaintyMap::UncertaintyMap(int width, int height, std::vector<double> values)
    : w_(width), h_(height), v_(std::move(values)) {
  check_grid(w_, h_, v_.size(), 1);
  for (double s : v_)
    if (!std::isfinite(s) || s < 0.0)
      raise(Errc::bad_format, "uncertainty values must be finite and >= 0");
}

ScalarMap::ScalarMap(int width, int height, std::vector<double> values)
    : w_(width), h_(height), v_(std::move(values)) {
  check_grid(w_, h_, v_.size(), 1);
}

BinaryMask valid_mask(const DepthMap& d) {
  std::vector<std::uint8_t> m(d.values().size());
  const auto& v = d.values();
  for (size_t i = 0; i < v.size(); ++i) m[i] = v[i] > 0.0 ? 1 : 0;
  return BinaryMask(d.width(), d.height(), std::move(m));
}

double masked_median(const DepthMap& d) {
  std::vector<double> vals;
  vals.reserve(d.values().size());
  for (double v : d.values())
    if (v > 0.0) vals.push_back(v);
  if (vals.empty()) raise(Errc::empty_mask, "masked_median on a map with no valid pixel");
  const size_t n = vals.size();
  const size_t hi = n / 2;
  std::nth_element(vals.begin(), vals.begin() + hi, vals.end());
  const double upper = vals[hi];
  if (n % 2 == 1) return upper;
  // even count: mean of the two central values
  const double lower = *std::max_element(vals.begin(), vals.begin() + hi);
  return (lower + upper) / 2.0;
}

namespace {

template <class Grid, int Channels>
std::vector<double> crop_values(const Grid& g, const Rect& r) {
  if (!r.inside_frame(g.width(), g.height()))
    raise(Errc::out_of_bounds, "crop rect exceeds frame bounds");
  std::vector<double> out(size_t(r.width()) * r.height() * Channels);
  const auto& src = g.values();
  for (int y = 0; y < r.height(); ++y) {
    const size_t src_off = (size_t(y + r.y0()) * g.width() + r.x0()) * Channels;
    const size_t dst_off = size_t(y) * r.width() * Channels;
    std::copy_n(src.begin() + src_off, size_t(r.width()) * Channels, out.begin() + dst_off);
  }
  return out;
}

}  // namespace

DepthMap crop(const DepthMap& d, const Rect& r) {
  return DepthMap(r.width(), r.height(), crop_values<DepthMap, 1>(d, r));
}

ImageFrame crop(const ImageFrame& f, const Rect& r) {
  return ImageFrame(r.width(), r.height(), crop_values<ImageFrame, 3>(f, r));
}

DepthMap pad_into(const DepthMap& inner, int outer_w, int outer_h, const Rect& at) {
  if (at.width() != inner.width() || at.height() != inner.height())
    raise(Errc::dimension_mismatch, "pad_into rect does not match inner dimensions");
  if (!at.inside_frame(outer_w, outer_h))
    raise(Errc::dimension_mismatch, "pad_into rect exceeds the outer frame");
  std::vector<double> out(size_t(outer_w) * outer_h, 0.0);
  const auto& src = inner.values();
  for (int y = 0; y < inner.height(); ++y) {
    const size_t dst_off = size_t(y + at.y0()) * outer_w + at.x0();
    std::copy_n(src.begin() + size_t(y) * inner.width(), size_t(inner.width()),
                out.begin() + dst_off);
  }
  return DepthMap(outer_w, outer_h, std::move(out));
}

}  // namespace fovex
