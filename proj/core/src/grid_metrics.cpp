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

#include "robobench/grid_metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace robobench::grid
{

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes)
: k_(num_classes), counts_(num_classes * num_classes, 0)
{
  if (num_classes == 0) {
    throw ValidationError("confusion matrix needs at least one class");
  }
}

std::uint64_t ConfusionMatrix::total() const
{
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

ConfusionMatrix & ConfusionMatrix::operator+=(const ConfusionMatrix & other)
{
  if (other.k_ != k_) {
    throw ValidationError("cannot merge confusion matrices of different sizes");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
  return *this;
}

void accumulate(ConfusionMatrix & cm, const LabelGrid & pred, const LabelGrid & gt)
{
  if (pred.dims != gt.dims) {
    throw ValidationError("prediction and ground-truth grids have different shapes");
  }
  std::size_t expected = gt.dims.empty() ? 0 : 1;
  for (auto d : gt.dims) {
    expected *= d;
  }
  if (gt.labels.size() != expected || pred.labels.size() != expected) {
    throw ValidationError("grid label count does not match its dimensions");
  }
  const std::size_t k = cm.num_classes();
  // Validate first so a bad cell leaves the matrix untouched.
  for (std::size_t i = 0; i < expected; ++i) {
    const auto g = gt.labels[i];
    if (g != gt.ignore_value && g >= k) {
      throw ValidationError(
        "ground-truth label " + std::to_string(g) + " at cell " + std::to_string(i) +
        " is outside [0, " + std::to_string(k) + ")");
    }
    if (g != gt.ignore_value && pred.labels[i] >= k) {
      throw ValidationError(
        "predicted label " + std::to_string(pred.labels[i]) + " at cell " + std::to_string(i) +
        " is outside [0, " + std::to_string(k) + ")");
    }
  }
  for (std::size_t i = 0; i < expected; ++i) {
    if (gt.labels[i] != gt.ignore_value) {
      ++cm.at(gt.labels[i], pred.labels[i]);
    }
  }
}

std::vector<std::optional<double>> iou_per_class(const ConfusionMatrix & cm)
{
  const std::size_t k = cm.num_classes();
  std::vector<std::optional<double>> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row += cm.at(c, j);
      col += cm.at(j, c);
    }
    const std::uint64_t tp = cm.at(c, c);
    const std::uint64_t denom = row + col - tp;
    if (denom > 0) {
      out[c] = static_cast<double>(tp) / static_cast<double>(denom);
    }
  }
  return out;
}

double miou(const ConfusionMatrix & cm, std::span<const std::uint32_t> included)
{
  const auto iou = iou_per_class(cm);
  double sum = 0.0;
  std::size_t n = 0;
  for (auto c : included) {
    if (c >= iou.size()) {
      throw ValidationError("included class " + std::to_string(c) + " is out of range");
    }
    if (iou[c]) {
      sum += *iou[c];
      ++n;
    }
  }
  if (n == 0) {
    throw UndefinedMetricError("mIoU is undefined: every included class is absent");
  }
  return sum / static_cast<double>(n);
}

std::vector<std::uint32_t> included_classes(std::size_t num_classes, std::optional<std::uint32_t> excluded)
{
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < num_classes; ++c) {
    if (c != excluded) {
      out.push_back(c);
    }
  }
  return out;
}

LabelGrid labels_from_probabilities(
  std::span<const std::uint32_t> dims, std::span<const float> probs, std::uint32_t background_label,
  std::uint32_t ignore_value)
{
  if (dims.size() < 2) {
    throw ValidationError("probability grid needs a channel axis and at least one spatial axis");
  }
  const std::size_t channels = dims[0];
  if (channels == 0) {
    throw ValidationError("probability grid has zero channels");
  }
  std::size_t cells = 1;
  for (std::size_t i = 1; i < dims.size(); ++i) {
    cells *= dims[i];
  }
  if (probs.size() != channels * cells) {
    throw ValidationError("probability payload does not match its dimensions");
  }
  LabelGrid out;
  out.dims.assign(dims.begin() + 1, dims.end());
  out.labels.assign(cells, background_label);
  out.ignore_value = ignore_value;
  for (std::size_t i = 0; i < cells; ++i) {
    float best = -1.f;
    for (std::size_t c = 0; c < channels; ++c) {
      const float p = probs[c * cells + i];
      if (!std::isfinite(p) || p < 0.f || p > 1.f) {
        throw ValidationError(
          "probability at channel " + std::to_string(c) + ", cell " + std::to_string(i) +
          " is outside [0, 1]");
      }
      if (p >= kProbabilityThreshold && p > best) {
        best = p;
        out.labels[i] = static_cast<std::uint32_t>(c);
      }
    }
  }
  return out;
}

}  // namespace robobench::grid
