#include "fovex/resample.hpp"

#include <algorithm>
#include <cmath>

#include "fovex/rng.hpp"

namespace fovex {

ResampleKind resample_kind_from_name(const std::string& name) {
  if (name == "center") return ResampleKind::center;
  if (name == "sparse") return ResampleKind::sparse;
  if (name == "random") return ResampleKind::random;
  if (name == "bottom") return ResampleKind::bottom;
  raise(Errc::bad_config, "unknown resample mode '" + name + "'");
}

const char* resample_kind_name(ResampleKind kind) {
  switch (kind) {
    case ResampleKind::center: return "center";
    case ResampleKind::sparse: return "sparse";
    case ResampleKind::random: return "random";
    case ResampleKind::bottom: return "bottom";
  }
  return "?";
}

namespace {

void check_fraction(double f) {
  if (!(f > 0.0) || f > 1.0) raise(Errc::degenerate_region, "region fraction must be in (0,1]");
}

DepthMap keep_rect_only(const DepthMap& gt, const Rect& r) {
  std::vector<double> out(gt.values().size(), 0.0);
  for (int y = r.y0(); y < r.y1(); ++y)
    for (int x = r.x0(); x < r.x1(); ++x) out[size_t(y) * gt.width() + x] = gt.at(x, y);
  return DepthMap(gt.width(), gt.height(), std::move(out));
}

}  // namespace

PartialDepth resample(const DepthMap& gt, const ResampleMode& mode) {
  check_fraction(mode.frac_w);
  check_fraction(mode.frac_h);
  const int W = gt.width(), H = gt.height();
  const int rw = std::max(1, int(std::llround(W * mode.frac_w)));
  const int rh = std::max(1, int(std::llround(H * mode.frac_h)));

  switch (mode.kind) {
    case ResampleKind::center: {
      const Rect r((W - rw) / 2, (H - rh) / 2, rw, rh);
      return {keep_rect_only(gt, r), r};
    }
    case ResampleKind::bottom: {
      const Rect r((W - rw) / 2, H - rh, rw, rh);
      return {keep_rect_only(gt, r), r};
    }
    case ResampleKind::sparse: {
      if (!(mode.keep_rate > 0.0) || mode.keep_rate > 1.0)
        raise(Errc::degenerate_region, "keep rate must be in (0,1]");
      const Rect r((W - rw) / 2, (H - rh) / 2, rw, rh);
      DepthMap cropped = keep_rect_only(gt, r);
      rng::Stream stream(mode.seed);
      std::vector<double> out = cropped.values();
      // One draw per rect pixel in row-major order, independent of validity.
      for (int y = r.y0(); y < r.y1(); ++y)
        for (int x = r.x0(); x < r.x1(); ++x)
          if (stream.uniform01() >= mode.keep_rate) out[size_t(y) * W + x] = 0.0;
      return {DepthMap(W, H, std::move(out)), r};
    }
    case ResampleKind::random: {
      Rect bounds = mode.random_bounds ? *mode.random_bounds
                                       : Rect(W / 3, H / 3, std::max(1, W / 3), std::max(1, H / 3));
      if (!bounds.inside_frame(W, H))
        raise(Errc::degenerate_region, "random placement bounds exceed the frame");
      rng::Stream stream(mode.seed);
      const int cx = stream.uniform_int(bounds.x0(), bounds.x1() - 1);
      const int cy = stream.uniform_int(bounds.y0(), bounds.y1() - 1);
      const int x0 = std::clamp(cx - rw / 2, 0, W - rw);
      const int y0 = std::clamp(cy - rh / 2, 0, H - rh);
      const Rect r(x0, y0, rw, rh);
      return {keep_rect_only(gt, r), r};
    }
  }
  raise(Errc::degenerate_region, "invalid resample mode");
}

}  // namespace fovex
