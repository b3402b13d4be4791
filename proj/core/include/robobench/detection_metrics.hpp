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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "robobench/core.hpp"

namespace robobench::detection
{

struct GtBox
{
  SampleId sample;
  std::array<double, 3> translation{};  // metres
  std::array<double, 3> size{};  // width, length, height
  double yaw = 0.0;  // radians
  std::array<double, 2> velocity{};  // m/s
  std::string class_name;
  std::optional<std::string> attribute;
};

struct DetBox : GtBox
{
  double score = 0.0;
};

/// Positive sizes, finite numbers, score in [0, 1]. Throws ValidationError.
void validate(const GtBox & box);
void validate(const DetBox & box);

struct DetectionConfig
{
  std::vector<std::string> class_set;
  std::vector<double> dist_thresholds{0.5, 1.0, 2.0, 4.0};
  double tp_threshold = 2.0;
  double min_recall = 0.1;
  double min_precision = 0.1;
  /// Classes for which velocity and attribute errors are not defined.
  std::set<std::string> attributeless_classes;

  void validate() const;
};

enum class TpMetric { trans, scale, orient, vel, attr };
inline constexpr std::array<TpMetric, 5> kTpMetrics = {
  TpMetric::trans, TpMetric::scale, TpMetric::orient, TpMetric::vel, TpMetric::attr};
const char * tp_metric_name(TpMetric m);  // "mATE", ...

struct TpErrors
{
  double ate = 1.0;
  double ase = 1.0;
  double aoe = 1.0;
  double ave = 1.0;
  double aae = 1.0;

  double get(TpMetric m) const;
  double & get(TpMetric m);
};

/// One prediction in descending-score order and its outcome.
struct RankedPrediction
{
  std::size_t pred = 0;  // index into the prediction list
  double score = 0.0;
  std::optional<std::size_t> gt;  // matched GT index
  double distance = 0.0;  // planar centre distance to the matched GT
};

struct MatchResult
{
  std::vector<RankedPrediction> ranked;  // only predictions of the class
  std::vector<std::size_t> unmatched_gts;
  std::size_t num_gt = 0;

  std::size_t num_matches() const;
};

/// Greedy matching: predictions of `class_name` in descending score order
/// (ties keep input order) each take the nearest unmatched GT of the same
/// class and sample if its planar centre distance is <= d.
MatchResult match_boxes(
  std::span<const DetBox> preds, std::span<const GtBox> gts, const std::string & class_name,
  double d);

/// Precision/recall sampled on 101 recall points; mean of
/// max(precision - min_precision, 0) above min_recall, normalized.
/// 0 when num_gt == 0 or nothing matched.
double average_precision(const MatchResult & m, const DetectionConfig & cfg);

/// Per-class TP errors from a match at cfg.tp_threshold, using cumulative
/// means interpolated over the recall grid. 1 where the class reaches too
/// little recall. Velocity and attribute errors are NaN for attribute-less
/// classes.
TpErrors class_tp_errors(
  const MatchResult & m, std::span<const DetBox> preds, std::span<const GtBox> gts,
  const DetectionConfig & cfg, bool attributeless);

/// (5 mAP + sum(1 - min(1, err))) / 10. NaN errors count as 1.
double nds(double map, const TpErrors & tp);

struct DetectionResult
{
  /// Classes with at least one GT box; only these enter the averages.
  std::vector<std::string> included_classes;
  std::map<std::string, std::vector<double>> ap;  // per class, per threshold
  std::map<std::string, TpErrors> class_tp;
  double map = 0.0;
  TpErrors tp;
  double nds = 0.0;
};

/// Full evaluation. Prediction class names outside cfg.class_set and sample
/// ids absent from the GT set raise ValidationError. The GT set covers every
/// sample with a GT box plus `gt_samples` (samples annotated with no boxes).
/// With no GT box at all the metric is undefined (UndefinedMetricError).
DetectionResult evaluate_detection(
  std::span<const DetBox> preds, std::span<const GtBox> gts, const DetectionConfig & cfg,
  std::span<const SampleId> gt_samples = {});

// Exposed for testing.

/// numpy.interp with left = fp[0] and the given right fill value.
double interp(double x, std::span<const double> xp, std::span<const double> fp, double right);

/// 1 - IoU of two boxes sharing centre and heading.
double scale_error(const std::array<double, 3> & a, const std::array<double, 3> & b);

/// Smallest absolute angle between two yaws, in [0, pi].
double yaw_difference(double a, double b);

}  // namespace robobench::detection
