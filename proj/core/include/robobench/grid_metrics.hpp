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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "robobench/core.hpp"

namespace robobench::grid
{

inline constexpr std::uint32_t kDefaultIgnoreValue = 255;

/// 2-D (H x W) or 3-D (X x Y x Z) label grid.
struct LabelGrid
{
  std::vector<std::uint32_t> dims;
  std::vector<std::uint32_t> labels;  // row-major
  std::uint32_t ignore_value = kDefaultIgnoreValue;

  std::size_t size() const { return labels.size(); }
};

/// Rows are ground truth, columns prediction.
class ConfusionMatrix
{
public:
  explicit ConfusionMatrix(std::size_t num_classes);

  std::size_t num_classes() const { return k_; }
  std::uint64_t at(std::size_t gt, std::size_t pred) const { return counts_[gt * k_ + pred]; }
  std::uint64_t & at(std::size_t gt, std::size_t pred) { return counts_[gt * k_ + pred]; }
  std::uint64_t total() const;

  ConfusionMatrix & operator+=(const ConfusionMatrix & other);
  friend ConfusionMatrix operator+(ConfusionMatrix a, const ConfusionMatrix & b) { return a += b; }
  friend bool operator==(const ConfusionMatrix &, const ConfusionMatrix &) = default;

private:
  std::size_t k_;
  std::vector<std::uint64_t> counts_;
};

/// Adds one count per cell where gt != ignore_value. Throws ValidationError on
/// shape mismatch or labels >= num_classes (prediction) / neither a class nor
/// the ignore value (ground truth).
void accumulate(ConfusionMatrix & cm, const LabelGrid & pred, const LabelGrid & gt);

/// TP / (TP + FP + FN) per class; nullopt when the denominator is zero.
std::vector<std::optional<double>> iou_per_class(const ConfusionMatrix & cm);

/// Mean IoU over `included` classes that are present. Throws
/// UndefinedMetricError when none is present, ValidationError when an
/// included class is out of range.
double miou(const ConfusionMatrix & cm, std::span<const std::uint32_t> included);

/// All classes except `excluded` (e.g. the free-space class of occupancy).
std::vector<std::uint32_t> included_classes(
  std::size_t num_classes, std::optional<std::uint32_t> excluded = std::nullopt);

inline constexpr double kProbabilityThreshold = 0.5;

/// Converts C x (spatial) probability channels into labels: among channels
/// with probability >= 0.5 the highest wins (lowest index on ties); cells with
/// no channel above threshold get `background_label`. Probabilities must be
/// finite and in [0, 1].
LabelGrid labels_from_probabilities(
  std::span<const std::uint32_t> dims, std::span<const float> probs,
  std::uint32_t background_label = 0, std::uint32_t ignore_value = kDefaultIgnoreValue);

}  // namespace robobench::grid
