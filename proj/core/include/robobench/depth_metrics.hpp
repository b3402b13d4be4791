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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "robobench/core.hpp"
#include "robobench/io.hpp"

namespace robobench::depth
{

using io::DepthMap;

struct DepthConfig
{
  double min_depth = 1e-3;  // metres
  double max_depth = 80.0;
  bool median_scaling = false;

  void validate() const;
};

/// Thresholds 1.25^t for t = 1, 2, 3.
inline constexpr double kDeltaThresholds[3] = {1.25, 1.5625, 1.953125};

struct DepthMetrics
{
  double abs_rel = 0.0;
  double rmse = 0.0;
  double delta[3] = {0.0, 0.0, 0.0};  // percent
  std::size_t valid_pixels = 0;
  std::size_t nonfinite_predictions = 0;  // clamped to min_depth
};

/// Pixel is scored when gt is finite and min_depth <= gt <= max_depth, gt > 0.
bool is_valid_gt(float gt, const DepthConfig & cfg);

/// Median of a non-empty sample (mean of the two middle values for even n).
double median(std::vector<double> values);

/// Multiplies every prediction by median(gt) / median(pred) over valid pixels.
/// Throws ValidationError when there is no valid pixel or a median is <= 0.
DepthMap median_scale(const DepthMap & pred, const DepthMap & gt, const DepthConfig & cfg);

/// Per-image metrics. Throws ValidationError on shape mismatch and
/// UndefinedMetricError when the image has no valid pixel.
DepthMetrics evaluate_depth(const DepthMap & pred, const DepthMap & gt, const DepthConfig & cfg);

struct DatasetDepthResult
{
  DepthMetrics mean;
  std::size_t images_scored = 0;
  std::size_t images_skipped = 0;  // no valid pixel
};

/// Dataset metrics: the unweighted mean of per-image metrics, or with
/// `micro_average` the metrics over all valid pixels pooled together. Images
/// without valid pixels are skipped and counted; if every image is skipped the
/// result is undefined (UndefinedMetricError).
DatasetDepthResult evaluate_depth_dataset(
  std::span<const DepthMap> preds, std::span<const DepthMap> gts, const DepthConfig & cfg,
  bool micro_average = false);

}  // namespace robobench::depth
