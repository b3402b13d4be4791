// Copyright 2026 The RoboBench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robobench/depth_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace robobench::depth
{

namespace
{

void check_pair(const DepthMap & pred, const DepthMap & gt)
{
  if (pred.width != gt.width || pred.height != gt.height) {
    throw ValidationError(
      "depth shape mismatch: prediction " + std::to_string(pred.width) + "x" +
      std::to_string(pred.height) + ", ground truth " + std::to_string(gt.width) + "x" +
      std::to_string(gt.height));
  }
  const auto n = static_cast<std::size_t>(gt.width) * gt.height;
  if (pred.values.size() != n || gt.values.size() != n) {
    throw ValidationError("depth map value count does not match its dimensions");
  }
}

// Running sums over valid pixels; shared by per-image and pooled evaluation.
struct Sums
{
  double abs_rel = 0.0;
  double sq = 0.0;
  std::size_t delta[3] = {0, 0, 0};
  std::size_t n = 0;
  std::size_t nonfinite = 0;

  DepthMetrics finish() const
  {
    DepthMetrics m;
    const auto dn = static_cast<double>(n);
    m.abs_rel = abs_rel / dn;
    m.rmse = std::sqrt(sq / dn);
    for (int t = 0; t < 3; ++t) {
      m.delta[t] = 100.0 * static_cast<double>(delta[t]) / dn;
    }
    m.valid_pixels = n;
    m.nonfinite_predictions = nonfinite;
    return m;
  }
};

void add_image(Sums & s, const DepthMap & pred_in, const DepthMap & gt, const DepthConfig & cfg)
{
  const DepthMap & pred = pred_in;
  double scale = 1.0;
  if (cfg.median_scaling) {
    // Scale factor computed on the non-finite-clamped prediction.
    std::vector<double> g;
    std::vector<double> p;
    for (std::size_t i = 0; i < gt.values.size(); ++i) {
      if (is_valid_gt(gt.values[i], cfg)) {
        g.push_back(gt.values[i]);
        const double v = pred.values[i];
        p.push_back(std::isfinite(v) ? v : cfg.min_depth);
      }
    }
    if (g.empty()) {
      return;
    }
    const double mp = median(p);
    if (!(mp > 0.0)) {
      throw ValidationError("median of the prediction over valid pixels is not positive");
    }
    scale = median(g) / mp;
  }
  for (std::size_t i = 0; i < gt.values.size(); ++i) {
    const float gv = gt.values[i];
    if (!is_valid_gt(gv, cfg)) {
      continue;
    }
    double p = pred.values[i];
    if (!std::isfinite(p)) {
      p = cfg.min_depth;
      ++s.nonfinite;
    } else {
      p *= scale;
    }
    p = std::clamp(p, cfg.min_depth, cfg.max_depth);
    const double g = gv;
    s.abs_rel += std::abs(g - p) / g;
    s.sq += (g - p) * (g - p);
    const double ratio = std::max(g / p, p / g);
    for (int t = 0; t < 3; ++t) {
      if (ratio < kDeltaThresholds[t]) {
        ++s.delta[t];
      }
    }
    ++s.n;
  }
}

}  // namespace

void DepthConfig::validate() const
{
  if (!(min_depth > 0.0 && min_depth < max_depth && std::isfinite(max_depth))) {
    throw ValidationError("depth config needs 0 < min_depth < max_depth");
  }
}

bool is_valid_gt(float gt, const DepthConfig & cfg)
{
  return std::isfinite(gt) && gt > 0.f && gt >= cfg.min_depth && gt <= cfg.max_depth;
}

double median(std::vector<double> v)
{
  if (v.empty()) {
    throw ValidationError("median of an empty sample");
  }
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) {
    return hi;
  }
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return (lo + hi) / 2.0;
}

DepthMap median_scale(const DepthMap & pred, const DepthMap & gt, const DepthConfig & cfg)
{
  check_pair(pred, gt);
  std::vector<double> g;
  std::vector<double> p;
  for (std::size_t i = 0; i < gt.values.size(); ++i) {
    if (is_valid_gt(gt.values[i], cfg)) {
      g.push_back(gt.values[i]);
      p.push_back(pred.values[i]);
    }
  }
  if (g.empty()) {
    throw ValidationError("median scaling needs at least one valid pixel");
  }
  const double mp = median(p);
  const double mg = median(g);
  if (!(mp > 0.0) || !(mg > 0.0)) {
    throw ValidationError("median scaling needs positive medians");
  }
  const double scale = mg / mp;
  DepthMap out = pred;
  for (auto & v : out.values) {
    v = static_cast<float>(v * scale);
  }
  return out;
}

DepthMetrics evaluate_depth(const DepthMap & pred, const DepthMap & gt, const DepthConfig & cfg)
{
  cfg.validate();
  check_pair(pred, gt);
  Sums s;
  add_image(s, pred, gt, cfg);
  if (s.n == 0) {
    throw UndefinedMetricError("depth image has no valid ground-truth pixel");
  }
  return s.finish();
}

DatasetDepthResult evaluate_depth_dataset(
  std::span<const DepthMap> preds, std::span<const DepthMap> gts, const DepthConfig & cfg,
  bool micro_average)
{
  cfg.validate();
  if (preds.size() != gts.size()) {
    throw ValidationError("prediction and ground-truth image counts differ");
  }
  DatasetDepthResult res;
  Sums pooled;
  DepthMetrics acc;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    check_pair(preds[i], gts[i]);
    Sums s;
    add_image(s, preds[i], gts[i], cfg);
    if (s.n == 0) {
      ++res.images_skipped;
      continue;
    }
    ++res.images_scored;
    pooled.abs_rel += s.abs_rel;
    pooled.sq += s.sq;
    for (int t = 0; t < 3; ++t) {
      pooled.delta[t] += s.delta[t];
    }
    pooled.n += s.n;
    pooled.nonfinite += s.nonfinite;
    const DepthMetrics m = s.finish();
    acc.abs_rel += m.abs_rel;
    acc.rmse += m.rmse;
    for (int t = 0; t < 3; ++t) {
      acc.delta[t] += m.delta[t];
    }
  }
  if (res.images_scored == 0) {
    throw UndefinedMetricError("no depth image has a valid ground-truth pixel");
  }
  if (micro_average) {
    res.mean = pooled.finish();
    return res;
  }
  const auto n = static_cast<double>(res.images_scored);
  res.mean.abs_rel = acc.abs_rel / n;
  res.mean.rmse = acc.rmse / n;
  for (int t = 0; t < 3; ++t) {
    res.mean.delta[t] = acc.delta[t] / n;
  }
  res.mean.valid_pixels = pooled.n;
  res.mean.nonfinite_predictions = pooled.nonfinite;
  return res;
}

}  // namespace robobench::depth
