#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Depth/image containers and masked-array algebra shared by the whole
// pipeline. Depth 0.0 is the single "invalid / no measurement" sentinel;
// the valid mask of a map is always exactly the set of pixels > 0.

namespace fovex {

enum class Errc {
  empty_mask,
  out_of_bounds,
  dimension_mismatch,
  non_positive_scale,
  zero_median,
  degenerate_rect,
  empty_distribution,
  oracle_unavailable,
  empty_overlap,
  score_out_of_range,
  missing_partial,
  bad_format,
  bit_depth_mismatch,
  degenerate_region,
  no_intersection,
  bad_config,
  io_error,
};

const char* errc_name(Errc code);

/// Norm used by masked residual sums and the photometric intensity term.
enum class Norm { l1, l2 };

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

/// Axis-aligned pixel rectangle, origin at top-left, y down.
class Rect {
 public:
  Rect(int x0, int y0, int width, int height);

  int x0() const { return x0_; }
  int y0() const { return y0_; }
  int width() const { return w_; }
  int height() const { return h_; }
  int x1() const { return x0_ + w_; }  // exclusive
  int y1() const { return y0_ + h_; }  // exclusive

  bool inside_frame(int frame_width, int frame_height) const {
    return x0_ >= 0 && y0_ >= 0 && x1() <= frame_width && y1() <= frame_height;
  }
  bool contains(const Rect& inner) const {
    return inner.x0_ >= x0_ && inner.y0_ >= y0_ && inner.x1() <= x1() && inner.y1() <= y1();
  }
  bool operator==(const Rect& o) const {
    return x0_ == o.x0_ && y0_ == o.y0_ && w_ == o.w_ && h_ == o.h_;
  }

 private:
  int x0_, y0_, w_, h_;
};

class BinaryMask {
 public:
  BinaryMask(int width, int height) : w_(width), h_(height), v_(size_t(width) * height, 0) {}
  BinaryMask(int width, int height, std::vector<std::uint8_t> values);

  int width() const { return w_; }
  int height() const { return h_; }
  std::uint8_t at(int x, int y) const { return v_[size_t(y) * w_ + x]; }
  void set(int x, int y, bool on) { v_[size_t(y) * w_ + x] = on ? 1 : 0; }
  const std::vector<std::uint8_t>& values() const { return v_; }
  long popcount() const;

 private:
  int w_, h_;
  std::vector<std::uint8_t> v_;
};

/// Dense grid of metric depths in meters. Values are finite and >= 0;
/// 0 encodes an invalid pixel. Immutable after construction.
class DepthMap {
 public:
  DepthMap(int width, int height);  // all invalid
  DepthMap(int width, int height, std::vector<double> values);

  int width() const { return w_; }
  int height() const { return h_; }
  double at(int x, int y) const { return v_[size_t(y) * w_ + x]; }
  bool valid(int x, int y) const { return at(x, y) > 0.0; }
  const std::vector<double>& values() const { return v_; }
  bool same_size(const DepthMap& o) const { return w_ == o.w_ && h_ == o.h_; }

 private:
  int w_, h_;
  std::vector<double> v_;
};

/// 3-channel image, interleaved RGB, intensities in [0,1].
class ImageFrame {
 public:
  ImageFrame(int width, int height);  // black
  ImageFrame(int width, int height, std::vector<double> values);  // size w*h*3

  int width() const { return w_; }
  int height() const { return h_; }
  double at(int x, int y, int c) const { return v_[(size_t(y) * w_ + x) * 3 + c]; }
  const std::vector<double>& values() const { return v_; }
  bool same_size(const ImageFrame& o) const { return w_ == o.w_ && h_ == o.h_; }

 private:
  int w_, h_;
  std::vector<double> v_;
};

/// Per-pixel standard deviation in meters; values finite and >= 0.
class UncertaintyMap {
 public:
  UncertaintyMap(int width, int height, std::vector<double> values);

  int width() const { return w_; }
  int height() const { return h_; }
  double at(int x, int y) const { return v_[size_t(y) * w_ + x]; }
  const std::vector<double>& values() const { return v_; }

 private:
  int w_, h_;
  std::vector<double> v_;
};

/// Unconstrained per-pixel scalar field (SSIM maps, error maps).
class ScalarMap {
 public:
  ScalarMap(int width, int height, std::vector<double> values);

  int width() const { return w_; }
  int height() const { return h_; }
  double at(int x, int y) const { return v_[size_t(y) * w_ + x]; }
  const std::vector<double>& values() const { return v_; }

 private:
  int w_, h_;
  std::vector<double> v_;
};

/// mask(x,y) = 1 iff d(x,y) > 0.
BinaryMask valid_mask(const DepthMap& d);

/// Median over valid pixels; even count takes the mean of the two central
/// values. Throws empty_mask when no pixel is valid.
double masked_median(const DepthMap& d);

DepthMap crop(const DepthMap& d, const Rect& r);
ImageFrame crop(const ImageFrame& f, const Rect& r);

/// Embeds `inner` into a zero (invalid) frame of `outer_w` x `outer_h` at
/// rect `at`. `at` must match inner's dimensions and lie inside the frame.
DepthMap pad_into(const DepthMap& inner, int outer_w, int outer_h, const Rect& at);

}  // namespace fovex
