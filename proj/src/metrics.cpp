#include "fovex/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fovex/parallel.hpp"

namespace fovex {

namespace {

// Effective sensing range of the reference hardware; used only to clamp
// predictions ahead of the log metric.
constexpr double kLogClampMin = 1e-3;
constexpr double kLogClampMax = 200.0;

double median_where(const DepthMap& values, const DepthMap& mask_src) {
  std::vector<double> v;
  for (int y = 0; y < values.height(); ++y)
    for (int x = 0; x < values.width(); ++x)
      if (mask_src.valid(x, y)) v.push_back(values.at(x, y));
  if (v.empty()) raise(Errc::empty_mask, "scale correction over an empty mask");
  const size_t hi = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + hi, v.end());
  const double upper = v[hi];
  if (v.size() % 2 == 1) return upper;
  return (*std::max_element(v.begin(), v.begin() + hi) + upper) / 2.0;
}

}  // namespace

char protocol_letter(ScaleMode mode) {
  switch (mode) {
    case ScaleMode::median_per_image: return 'M';
    case ScaleMode::fixed: return 'F';
    case ScaleMode::from_partial: return 'P';
  }
  return '?';
}

ScaleMode protocol_from_letter(char letter) {
  switch (letter) {
    case 'M': return ScaleMode::median_per_image;
    case 'F': return ScaleMode::fixed;
    case 'P': return ScaleMode::from_partial;
  }
  raise(Errc::bad_config, std::string("unknown scale protocol '") + letter + "'");
}

std::pair<DepthMap, double> correct_scale(const DepthMap& pred, const DepthMap* gt,
                                          const DepthMap* partial, const ScaleProtocol& proto) {
  double scale = 1.0;
  switch (proto.mode) {
    case ScaleMode::median_per_image: {
      if (!gt) raise(Errc::empty_mask, "M protocol requires ground truth");
      if (!pred.same_size(*gt)) raise(Errc::dimension_mismatch, "pred and gt differ in size");
      const double denom = median_where(pred, *gt);
      if (!(denom > 0.0)) raise(Errc::zero_median, "prediction median on the gt mask is zero");
      scale = median_where(*gt, *gt) / denom;
      break;
    }
    case ScaleMode::from_partial: {
      if (!partial) raise(Errc::missing_partial, "P protocol requires a partial depth map");
      if (!pred.same_size(*partial))
        raise(Errc::dimension_mismatch, "pred and partial differ in size");
      const double denom = median_where(pred, *partial);
      if (!(denom > 0.0)) raise(Errc::zero_median, "prediction median on the partial mask is zero");
      scale = median_where(*partial, *partial) / denom;
      break;
    }
    case ScaleMode::fixed: {
      if (!(proto.fixed_scale > 0.0)) raise(Errc::non_positive_scale, "fixed scale must be > 0");
      scale = proto.fixed_scale;
      break;
    }
  }
  std::vector<double> out(pred.values().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = pred.values()[i] * scale;
  return {DepthMap(pred.width(), pred.height(), std::move(out)), scale};
}

MetricReport evaluate(const DepthMap& pred, const DepthMap& gt, const RangeFilter& filter) {
  if (!pred.same_size(gt)) raise(Errc::dimension_mismatch, "pred and gt differ in size");

  struct Acc {
    double abs_rel = 0, sq_rel = 0, sq = 0, sq_log = 0;
    long d1 = 0, d2 = 0, d3 = 0, n = 0;
    Acc& operator+=(const Acc& o) {
      abs_rel += o.abs_rel;
      sq_rel += o.sq_rel;
      sq += o.sq;
      sq_log += o.sq_log;
      d1 += o.d1;
      d2 += o.d2;
      d3 += o.d3;
      n += o.n;
      return *this;
    }
  };
  const int w = pred.width();
  const Acc acc = reduce_rows<Acc>(pred.height(), [&](int y) {
    Acc a;
    for (int x = 0; x < w; ++x) {
      const double g = gt.at(x, y);
      const double p = pred.at(x, y);
      if (!(g > 0.0) || !(p > 0.0)) continue;
      if (filter.min_m && !(g > *filter.min_m)) continue;
      if (filter.max_m && !(g < *filter.max_m)) continue;
      const double err = p - g;
      a.abs_rel += std::abs(err) / g;
      a.sq_rel += err * err / g;
      a.sq += err * err;
      const double pc = std::clamp(p, kLogClampMin, kLogClampMax);
      const double le = std::log(pc) - std::log(g);
      a.sq_log += le * le;
      const double ratio = std::max(p / g, g / p);
      if (ratio < 1.25) ++a.d1;
      if (ratio < 1.25 * 1.25) ++a.d2;
      if (ratio < 1.25 * 1.25 * 1.25) ++a.d3;
      ++a.n;
    }
    return a;
  });
  if (acc.n == 0) raise(Errc::empty_mask, "no mutually valid pixel after range filtering");

  MetricReport r;
  const double n = double(acc.n);
  r.abs_rel = acc.abs_rel / n;
  r.sq_rel = acc.sq_rel / n;
  r.rmse = std::sqrt(acc.sq / n);
  r.rmse_log = std::sqrt(acc.sq_log / n);
  r.delta1 = acc.d1 / n;
  r.delta2 = acc.d2 / n;
  r.delta3 = acc.d3 / n;
  r.n_valid = acc.n;
  r.range = filter;
  return r;
}

MetricReport evaluate_with_protocol(const DepthMap& pred, const DepthMap& gt,
                                    const DepthMap* partial, const ScaleProtocol& proto,
                                    const RangeFilter& filter) {
  auto [corrected, scale] = correct_scale(pred, &gt, partial, proto);
  MetricReport r = evaluate(corrected, gt, filter);
  r.scale_applied = scale;
  r.protocol = protocol_letter(proto.mode);
  return r;
}

std::string csv_header() {
  return "image_id,protocol,scale,n_valid,abs_rel,sq_rel,rmse,rmse_log,d1,d2,d3";
}

std::string csv_row(const std::string& image_id, const MetricReport& r) {
  std::ostringstream os;
  os.precision(9);
  os << image_id << ',' << r.protocol << ',' << r.scale_applied << ',' << r.n_valid << ','
     << r.abs_rel << ',' << r.sq_rel << ',' << r.rmse << ',' << r.rmse_log << ',' << r.delta1
     << ',' << r.delta2 << ',' << r.delta3;
  return os.str();
}

MetricReport aggregate(std::span<const MetricReport> reports) {
  if (reports.empty()) raise(Errc::empty_mask, "no reports to aggregate");
  MetricReport r;
  for (const MetricReport& x : reports) {
    r.abs_rel += x.abs_rel;
    r.sq_rel += x.sq_rel;
    r.rmse += x.rmse;
    r.rmse_log += x.rmse_log;
    r.delta1 += x.delta1;
    r.delta2 += x.delta2;
    r.delta3 += x.delta3;
    r.scale_applied += x.scale_applied;
    r.n_valid += x.n_valid;
  }
  const double n = double(reports.size());
  r.abs_rel /= n;
  r.sq_rel /= n;
  r.rmse /= n;
  r.rmse_log /= n;
  r.delta1 /= n;
  r.delta2 /= n;
  r.delta3 /= n;
  r.scale_applied /= n;
  r.protocol = reports[0].protocol;
  r.range = reports[0].range;
  return r;
}

}  // namespace fovex
