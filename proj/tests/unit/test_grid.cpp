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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "robobench/grid_metrics.hpp"

using namespace robobench;
using namespace robobench::grid;

namespace
{

LabelGrid filled(std::vector<std::uint32_t> dims, std::uint32_t v)
{
  std::size_t n = 1;
  for (auto d : dims) {
    n *= d;
  }
  return {std::move(dims), std::vector<std::uint32_t>(n, v)};
}

std::pair<LabelGrid, LabelGrid> random_pair(std::mt19937 & gen, std::uint32_t k, bool three_d)
{
  std::uniform_int_distribution<std::uint32_t> ext(1, 16), cls(0, k - 1);
  std::bernoulli_distribution ignore(0.1), agree(0.6);
  std::vector<std::uint32_t> dims = {ext(gen), ext(gen)};
  if (three_d) {
    dims.push_back(ext(gen));
  }
  LabelGrid gt = filled(dims, 0), pred = filled(dims, 0);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    gt.labels[i] = ignore(gen) ? kDefaultIgnoreValue : cls(gen);
    pred.labels[i] = agree(gen) && gt.labels[i] != kDefaultIgnoreValue ? gt.labels[i] : cls(gen);
  }
  return {pred, gt};
}

}  // namespace

TEST(Accumulate, PerfectFourByFour)
{
  ConfusionMatrix cm(3);
  accumulate(cm, filled({4, 4}, 1), filled({4, 4}, 1));
  EXPECT_EQ(cm.at(1, 1), 16u);
  EXPECT_EQ(cm.total(), 16u);
}

TEST(Accumulate, IgnoredCellsAreSkipped)
{
  ConfusionMatrix cm(3);
  accumulate(cm, filled({4, 4}, 2), filled({4, 4}, kDefaultIgnoreValue));
  EXPECT_EQ(cm, ConfusionMatrix(3));
}

TEST(Accumulate, Errors)
{
  ConfusionMatrix cm(3);
  EXPECT_THROW(accumulate(cm, filled({4, 4}, 0), filled({4, 5}, 0)), ValidationError);
  EXPECT_THROW(accumulate(cm, filled({4, 4}, 3), filled({4, 4}, 0)), ValidationError);
  EXPECT_THROW(accumulate(cm, filled({4, 4}, 0), filled({4, 4}, 7)), ValidationError);
  // A nonsense prediction under an ignored cell is not an error.
  EXPECT_NO_THROW(accumulate(cm, filled({2, 2}, 9), filled({2, 2}, kDefaultIgnoreValue)));
}

TEST(Accumulate, BatchAssociativity)
{
  std::mt19937 gen(1);
  const auto [p1, g1] = random_pair(gen, 4, false);
  const auto [p2, g2] = random_pair(gen, 4, true);
  ConfusionMatrix a(4), b(4), both(4);
  accumulate(a, p1, g1);
  accumulate(b, p2, g2);
  accumulate(both, p1, g1);
  accumulate(both, p2, g2);
  EXPECT_EQ(a + b, both);
  EXPECT_EQ(b + a, both);
}

TEST(Iou, Examples)
{
  ConfusionMatrix cm(2);
  cm.at(1, 1) = 5;
  cm.at(0, 1) = 3;
  cm.at(1, 0) = 2;
  EXPECT_EQ(*iou_per_class(cm)[1], 0.5);

  ConfusionMatrix disjoint(3);
  disjoint.at(1, 2) = 4;
  disjoint.at(2, 1) = 4;
  const auto iou = iou_per_class(disjoint);
  EXPECT_FALSE(iou[0].has_value());
  EXPECT_EQ(*iou[1], 0.0);
}

TEST(Miou, ExclusionRules)
{
  ConfusionMatrix cm(3);
  cm.at(1, 1) = 8;
  cm.at(1, 2) = 2;  // class 1 IoU 0.8; class 2 IoU 0
  const auto all = included_classes(3);
  EXPECT_NEAR(miou(cm, all), 0.4, 1e-15);
  const std::vector<std::uint32_t> only1 = {0, 1};
  EXPECT_NEAR(miou(cm, only1), 0.8, 1e-15);
  EXPECT_EQ(included_classes(3, 0u), (std::vector<std::uint32_t>{1, 2}));
  EXPECT_THROW(miou(ConfusionMatrix(3), all), UndefinedMetricError);
  const std::vector<std::uint32_t> bad = {5};
  EXPECT_THROW(miou(cm, bad), ValidationError);
}

TEST(Miou, PermutationInvariance)
{
  std::mt19937 gen(2);
  const std::vector<std::uint32_t> perm = {3, 0, 4, 1, 2};
  for (int trial = 0; trial < 20; ++trial) {
    auto [pred, gt] = random_pair(gen, 5, trial % 2);
    ConfusionMatrix a(5), b(5);
    accumulate(a, pred, gt);
    for (auto * g : {&pred, &gt}) {
      for (auto & v : g->labels) {
        v = v == kDefaultIgnoreValue ? v : perm[v];
      }
    }
    accumulate(b, pred, gt);
    EXPECT_NEAR(miou(a, included_classes(5)), miou(b, included_classes(5)), 1e-12);
  }
}

TEST(Miou, MatchesNaiveCounting)
{
  std::mt19937 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t k = 2 + trial % 5;
    const auto [pred, gt] = random_pair(gen, k, trial % 2);
    ConfusionMatrix cm(k);
    accumulate(cm, pred, gt);
    const auto want = oracle::naive_iou(pred.labels, gt.labels, k, kDefaultIgnoreValue);
    EXPECT_EQ(iou_per_class(cm), want);
    const auto want_miou = oracle::naive_miou(want);
    if (want_miou) {
      EXPECT_EQ(miou(cm, included_classes(k)), *want_miou);
    } else {
      EXPECT_THROW(miou(cm, included_classes(k)), UndefinedMetricError);
    }
  }
}

TEST(Probabilities, ThresholdAndTies)
{
  // Channels x 4 cells.
  const std::vector<std::uint32_t> dims = {3, 4};
  const std::vector<float> probs = {
    0.9f, 0.2f, 0.6f, 0.5f,  // class 0
    0.95f, 0.3f, 0.6f, 0.1f,  // class 1
    0.0f, 0.4f, 0.1f, 0.1f,  // class 2
  };
  const auto g = labels_from_probabilities(dims, probs, 0);
  EXPECT_EQ(g.dims, std::vector<std::uint32_t>{4});
  EXPECT_EQ(g.labels, (std::vector<std::uint32_t>{1, 0, 0, 0}));
  const auto bg = labels_from_probabilities(dims, probs, 2);
  EXPECT_EQ(bg.labels[1], 2u);  // nothing reaches 0.5

  const std::vector<float> bad = {1.5f, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_THROW(labels_from_probabilities(dims, bad), ValidationError);
  EXPECT_THROW(labels_from_probabilities(dims, std::vector<float>(5, 0.f)), ValidationError);
}
