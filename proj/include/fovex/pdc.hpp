#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fovex/core.hpp"
#include "fovex/propagation.hpp"

// Probabilistic derivation and composition: hypothesis generation per stage,
// candidate selection against the previous stage and the partial depth, and
// per-pixel uncertainty over the candidate set.

namespace fovex {

/// N candidate depth maps for one propagation stage. Candidates share
/// dimensions and must be everywhere-valid.
class DistributionSet {
 public:
  DistributionSet(std::vector<DepthMap> candidates, int stage_index);

  int size() const { return int(candidates_.size()); }
  int stage_index() const { return stage_index_; }
  const DepthMap& candidate(int k) const { return candidates_[size_t(k)]; }
  const std::vector<DepthMap>& candidates() const { return candidates_; }

 private:
  std::vector<DepthMap> candidates_;
  int stage_index_;
};

struct PdcConfig {
  double lambda = 1.0;        // weight on partial-depth fidelity
  int samples_per_stage = 5;  // N
  Norm norm = Norm::l1;
};

/// Produces one everywhere-valid candidate for a stage. `image` and `mixed`
/// are the stage crops and `region` is the stage rect in full-frame pixel
/// coordinates. Implementations must be deterministic given (inputs, seed,
/// sample_index).
class HypothesisGenerator {
 public:
  virtual ~HypothesisGenerator() = default;
  virtual std::string name() const = 0;
  virtual DepthMap generate(const ImageFrame& image, const DepthMap& mixed, const Rect& region,
                            int sample_index, std::uint64_t seed) const = 0;
};

/// Per-pixel population standard deviation over the candidate set.
UncertaintyMap uncertainty(const DistributionSet& p);

/// Selects the candidate minimizing
///   ||(d_k - refined_prev) on refined_prev's mask|| + lambda ||(d_k - partial) on partial's mask||.
/// Ties break toward the lowest candidate index.
DepthMap derive_stage(const DistributionSet& p, const DepthMap& refined_prev,
                      const DepthMap& partial, const PdcConfig& cfg);

struct ComposeResult {
  DepthMap depth;
  UncertaintyMap uncertainty;
  std::vector<std::vector<std::uint64_t>> stage_seeds;  // per stage, per sample
};

/// Runs the full pipeline: stage 0 is the partial depth; each expansion runs
/// the Eq-style mixing step, generates N candidates and keeps the best one.
/// `coarse` is the full-frame teacher stand-in cropped per stage; when absent
/// the previous refined map (padded) doubles as the coarse input and the
/// generator is responsible for filling the new ring.
ComposeResult compose_full(const ImageFrame& image, const DepthMap& partial,
                           const std::optional<DepthMap>& coarse, const StageSchedule& schedule,
                           const HypothesisGenerator& gen, const PdcConfig& cfg,
                           std::uint64_t master_seed);

/// Chamfer nearest-valid fill; identity on everywhere-valid maps.
DepthMap fill_nearest(const DepthMap& d);

// ---- Builtin generators (stand-ins for a trained hypothesis network) ----

/// Ground truth plus seeded Gaussian noise and optional per-sample global
/// scale jitter. Requires the ground-truth map.
class NoisyOracleGenerator : public HypothesisGenerator {
 public:
  NoisyOracleGenerator(std::optional<DepthMap> gt, double sigma, double jitter);
  std::string name() const override { return "noisy-oracle"; }
  DepthMap generate(const ImageFrame& image, const DepthMap& mixed, const Rect& region,
                    int sample_index, std::uint64_t seed) const override;

 private:
  std::optional<DepthMap> gt_;
  double sigma_;
  double jitter_;
};

/// Fills invalid pixels by inverse-distance weighting over nearby valid
/// pixels; weights combine spatial distance and intensity difference.
class GuidedInterpolator : public HypothesisGenerator {
 public:
  GuidedInterpolator(double gamma = 10.0, int window = 5, double power = 2.0);
  std::string name() const override { return "guided-interpolator"; }
  DepthMap generate(const ImageFrame& image, const DepthMap& mixed, const Rect& region,
                    int sample_index, std::uint64_t seed) const override;

 private:
  double gamma_;
  int window_;
  double power_;
};

/// Fills invalid pixels with the masked median of the input.
class ConstantFill : public HypothesisGenerator {
 public:
  std::string name() const override { return "constant-fill"; }
  DepthMap generate(const ImageFrame& image, const DepthMap& mixed, const Rect& region,
                    int sample_index, std::uint64_t seed) const override;
};

struct GeneratorParams {
  std::optional<DepthMap> gt;  // noisy-oracle only
  double sigma = 0.05;
  double jitter = 0.0;
  double gamma = 10.0;
  int window = 5;
  double power = 2.0;
};

std::vector<std::string> builtin_generator_names();
std::unique_ptr<HypothesisGenerator> make_generator(const std::string& name,
                                                    const GeneratorParams& params);

}  // namespace fovex
