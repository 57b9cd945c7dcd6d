#include "fovex/pdc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fovex/parallel.hpp"
#include "fovex/rng.hpp"

namespace fovex {

DistributionSet::DistributionSet(std::vector<DepthMap> candidates, int stage_index)
    : candidates_(std::move(candidates)), stage_index_(stage_index) {
  if (candidates_.empty()) raise(Errc::empty_distribution, "distribution set is empty");
  for (const DepthMap& d : candidates_) {
    if (!d.same_size(candidates_.front()))
      raise(Errc::dimension_mismatch, "candidates differ in size");
    for (double v : d.values())
      if (!(v > 0.0))
        raise(Errc::bad_format, "candidates must be everywhere-valid");
  }
}

UncertaintyMap uncertainty(const DistributionSet& p) {
  const int w = p.candidate(0).width();
  const int h = p.candidate(0).height();
  const int n = p.size();
  std::vector<double> out(size_t(w) * h);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < long(out.size()); ++i) {
    double mean = 0.0;
    for (int k = 0; k < n; ++k) mean += p.candidate(k).values()[size_t(i)];
    mean /= n;
    double var = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = p.candidate(k).values()[size_t(i)] - mean;
      var += d * d;
    }
    out[size_t(i)] = std::sqrt(var / n);
  }
  return UncertaintyMap(w, h, std::move(out));
}

namespace {

// ||(cand - ref) restricted to ref's valid mask|| for the configured norm.
double masked_residual(const DepthMap& cand, const DepthMap& ref, Norm norm) {
  struct Acc {
    double sum = 0;
    Acc& operator+=(const Acc& o) {
      sum += o.sum;
      return *this;
    }
  };
  const int w = cand.width();
  const Acc acc = reduce_rows<Acc>(cand.height(), [&](int y) {
    Acc a;
    for (int x = 0; x < w; ++x) {
      const double r = ref.at(x, y);
      if (!(r > 0.0)) continue;
      const double d = cand.at(x, y) - r;
      a.sum += norm == Norm::l1 ? std::abs(d) : d * d;
    }
    return a;
  });
  return norm == Norm::l1 ? acc.sum : std::sqrt(acc.sum);
}

}  // namespace

DepthMap derive_stage(const DistributionSet& p, const DepthMap& refined_prev,
                      const DepthMap& partial, const PdcConfig& cfg) {
  if (p.size() < 1) raise(Errc::empty_distribution, "distribution set is empty");
  if (!p.candidate(0).same_size(refined_prev) || !p.candidate(0).same_size(partial))
    raise(Errc::dimension_mismatch, "derive_stage maps differ in size");

  int best = 0;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int k = 0; k < p.size(); ++k) {
    const double obj = masked_residual(p.candidate(k), refined_prev, cfg.norm) +
                       cfg.lambda * masked_residual(p.candidate(k), partial, cfg.norm);
    if (obj < best_obj) {
      best_obj = obj;
      best = k;
    }
  }
  return p.candidate(best);
}

ComposeResult compose_full(const ImageFrame& image, const DepthMap& partial,
                           const std::optional<DepthMap>& coarse, const StageSchedule& schedule,
                           const HypothesisGenerator& gen, const PdcConfig& cfg,
                           std::uint64_t master_seed) {
  const int w = schedule.frame_width();
  const int h = schedule.frame_height();
  if (image.width() != w || image.height() != h || partial.width() != w || partial.height() != h)
    raise(Errc::dimension_mismatch, "compose_full frame sizes differ from the schedule");
  if (coarse && (coarse->width() != w || coarse->height() != h))
    raise(Errc::dimension_mismatch, "coarse depth size differs from the schedule");

  const Rect& r0 = schedule.stage(0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (partial.valid(x, y) && !(x >= r0.x0() && x < r0.x1() && y >= r0.y0() && y < r0.y1()))
        raise(Errc::out_of_bounds, "partial depth has valid pixels outside stage 0");

  DepthMap refined = crop(partial, r0);
  ComposeResult result{DepthMap(1, 1), UncertaintyMap(1, 1, {0.0}), {}};
  std::optional<DistributionSet> last_set;

  for (int i = 1; i <= schedule.count(); ++i) {
    const Rect& prev = schedule.stage(i - 1);
    const Rect& cur = schedule.stage(i);
    const Rect rel(prev.x0() - cur.x0(), prev.y0() - cur.y0(), prev.width(), prev.height());
    const DepthMap refined_padded = pad_into(refined, cur.width(), cur.height(), rel);
    const DepthMap blur = coarse ? crop(*coarse, cur) : refined_padded;
    const DepthMap mixed = run_stage({refined_padded, blur});
    const ImageFrame image_crop = crop(image, cur);
    const DepthMap partial_crop = crop(partial, cur);

    std::vector<DepthMap> candidates;
    std::vector<std::uint64_t> seeds;
    candidates.reserve(size_t(cfg.samples_per_stage));
    for (int k = 0; k < cfg.samples_per_stage; ++k) {
      const std::uint64_t seed = rng::derive_seed(master_seed, std::uint64_t(i), std::uint64_t(k));
      seeds.push_back(seed);
      candidates.push_back(gen.generate(image_crop, mixed, cur, k, seed));
    }
    last_set.emplace(std::move(candidates), i);
    refined = derive_stage(*last_set, refined_padded, partial_crop, cfg);
    result.stage_seeds.push_back(std::move(seeds));
  }

  result.depth = std::move(refined);
  result.uncertainty = uncertainty(*last_set);
  return result;
}

namespace {

struct Nearest {
  int x = -1, y = -1;
};

inline long sqdist(int x, int y, const Nearest& n) {
  const long dx = x - n.x, dy = y - n.y;
  return dx * dx + dy * dy;
}

// Two-pass chamfer propagation of the nearest valid pixel coordinate.
std::vector<Nearest> nearest_valid(const DepthMap& d) {
  const int w = d.width(), h = d.height();
  std::vector<Nearest> near(size_t(w) * h);
  bool any = false;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (d.valid(x, y)) {
        near[size_t(y) * w + x] = {x, y};
        any = true;
      }
  if (!any) raise(Errc::empty_mask, "fill on a map with no valid pixel");

  auto relax = [&](int x, int y, int nx, int ny) {
    if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
    const Nearest& cand = near[size_t(ny) * w + nx];
    if (cand.x < 0) return;
    Nearest& cur = near[size_t(y) * w + x];
    if (cur.x < 0 || sqdist(x, y, cand) < sqdist(x, y, cur)) cur = cand;
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      relax(x, y, x - 1, y);
      relax(x, y, x, y - 1);
      relax(x, y, x - 1, y - 1);
      relax(x, y, x + 1, y - 1);
    }
  for (int y = h - 1; y >= 0; --y)
    for (int x = w - 1; x >= 0; --x) {
      relax(x, y, x + 1, y);
      relax(x, y, x, y + 1);
      relax(x, y, x + 1, y + 1);
      relax(x, y, x - 1, y + 1);
    }
  return near;
}

}  // namespace

DepthMap fill_nearest(const DepthMap& d) {
  const auto near = nearest_valid(d);
  const int w = d.width(), h = d.height();
  std::vector<double> out = d.values();
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const size_t i = size_t(y) * w + x;
      if (!(out[i] > 0.0)) out[i] = d.at(near[i].x, near[i].y);
    }
  return DepthMap(w, h, std::move(out));
}

NoisyOracleGenerator::NoisyOracleGenerator(std::optional<DepthMap> gt, double sigma, double jitter)
    : gt_(std::move(gt)), sigma_(sigma), jitter_(jitter) {
  if (!gt_) raise(Errc::oracle_unavailable, "noisy-oracle requires a ground-truth depth map");
  for (double v : gt_->values())
    if (!(v > 0.0))
      raise(Errc::oracle_unavailable, "noisy-oracle requires an everywhere-valid ground truth");
}

DepthMap NoisyOracleGenerator::generate(const ImageFrame&, const DepthMap& mixed,
                                        const Rect& region, int, std::uint64_t seed) const {
  if (!region.inside_frame(gt_->width(), gt_->height()))
    raise(Errc::out_of_bounds, "stage region exceeds the oracle ground truth");
  if (region.width() != mixed.width() || region.height() != mixed.height())
    raise(Errc::dimension_mismatch, "stage region does not match the mixed map");
  DepthMap base = crop(*gt_, region);
  rng::Stream stream(seed);
  const double scale = jitter_ > 0.0 ? stream.uniform(1.0 - jitter_, 1.0 + jitter_) : 1.0;
  std::vector<double> out(base.values().size());
  for (size_t i = 0; i < out.size(); ++i) {
    const double noise = sigma_ > 0.0 ? sigma_ * stream.gaussian() : 0.0;
    out[i] = std::max(base.values()[i] * scale + noise, 1e-3);
  }
  return DepthMap(base.width(), base.height(), std::move(out));
}

GuidedInterpolator::GuidedInterpolator(double gamma, int window, double power)
    : gamma_(gamma), window_(window), power_(power) {
  if (window < 1) raise(Errc::bad_config, "guided-interpolator window must be >= 1");
}

DepthMap GuidedInterpolator::generate(const ImageFrame& image, const DepthMap& mixed, const Rect&,
                                      int, std::uint64_t) const {
  if (image.width() != mixed.width() || image.height() != mixed.height())
    raise(Errc::dimension_mismatch, "guided-interpolator image and depth differ in size");
  const auto near = nearest_valid(mixed);
  const int w = mixed.width(), h = mixed.height();
  std::vector<double> out = mixed.values();

#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const size_t i = size_t(y) * w + x;
      if (out[i] > 0.0) continue;
      // Gather valid pixels in a window around the chamfer anchor.
      const Nearest a = near[i];
      double wsum = 0.0, vsum = 0.0;
      for (int qy = std::max(0, a.y - window_); qy <= std::min(h - 1, a.y + window_); ++qy)
        for (int qx = std::max(0, a.x - window_); qx <= std::min(w - 1, a.x + window_); ++qx) {
          const double dq = mixed.at(qx, qy);
          if (!(dq > 0.0)) continue;
          const double dx = x - qx, dy = y - qy;
          double di = 0.0;
          for (int c = 0; c < 3; ++c) di += std::abs(image.at(x, y, c) - image.at(qx, qy, c));
          const double weight = std::exp(-gamma_ * di / 3.0) /
                                (std::pow(dx * dx + dy * dy, power_ / 2.0) + 1.0);
          wsum += weight;
          vsum += weight * dq;
        }
      out[i] = vsum / wsum;  // anchor itself guarantees wsum > 0
    }
  return DepthMap(w, h, std::move(out));
}

DepthMap ConstantFill::generate(const ImageFrame&, const DepthMap& mixed, const Rect&, int,
                                std::uint64_t) const {
  const double fill = masked_median(mixed);
  std::vector<double> out = mixed.values();
  for (double& v : out)
    if (!(v > 0.0)) v = fill;
  return DepthMap(mixed.width(), mixed.height(), std::move(out));
}

std::vector<std::string> builtin_generator_names() {
  return {"noisy-oracle", "guided-interpolator", "constant-fill"};
}

std::unique_ptr<HypothesisGenerator> make_generator(const std::string& name,
                                                    const GeneratorParams& params) {
  if (name == "noisy-oracle")
    return std::make_unique<NoisyOracleGenerator>(params.gt, params.sigma, params.jitter);
  if (name == "guided-interpolator")
    return std::make_unique<GuidedInterpolator>(params.gamma, params.window, params.power);
  if (name == "constant-fill") return std::make_unique<ConstantFill>();
  raise(Errc::bad_config, "unknown generator '" + name + "'");
}

}  // namespace fovex
