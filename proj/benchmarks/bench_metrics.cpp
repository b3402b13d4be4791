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

#include <benchmark/benchmark.h>

#include <random>

#include "detection_gen.hpp"
#include "robobench/depth_metrics.hpp"
#include "robobench/detection_metrics.hpp"
#include "robobench/grid_metrics.hpp"

using namespace robobench;

namespace
{

void BM_EvaluateDetection(benchmark::State & state)
{
  std::mt19937 gen(1);
  const int samples = static_cast<int>(state.range(0));
  const auto inst = fixtures::random_detection_instance(gen, samples, 3, 40);
  detection::DetectionConfig cfg;
  cfg.class_set = inst.classes;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detection::evaluate_detection(inst.preds, inst.gts, cfg, inst.samples));
  }
  state.counters["boxes"] = static_cast<double>(inst.preds.size() + inst.gts.size());
}
BENCHMARK(BM_EvaluateDetection)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

// 200x200x16 occupancy volume, 17 classes.
void BM_GridAccumulate(benchmark::State & state)
{
  std::mt19937 gen(2);
  std::uniform_int_distribution<std::uint32_t> cls(0, 16);
  const std::vector<std::uint32_t> dims = {200, 200, 16};
  grid::LabelGrid gt{dims, {}}, pred{dims, {}};
  for (std::size_t i = 0; i < 200u * 200u * 16u; ++i) {
    gt.labels.push_back(cls(gen));
    pred.labels.push_back(gen() % 4 ? gt.labels.back() : cls(gen));
  }
  for (auto _ : state) {
    grid::ConfusionMatrix cm(17);
    grid::accumulate(cm, pred, gt);
    benchmark::DoNotOptimize(grid::miou(cm, grid::included_classes(17)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(gt.size()));
}
BENCHMARK(BM_GridAccumulate)->Unit(benchmark::kMillisecond);

void BM_EvaluateDepth(benchmark::State & state)
{
  std::mt19937 gen(3);
  std::uniform_real_distribution<float> d(1.f, 80.f);
  std::lognormal_distribution<float> noise(0.f, 0.2f);
  depth::DepthMap gt{1600, 900, {}}, pred{1600, 900, {}};
  for (int i = 0; i < 1600 * 900; ++i) {
    gt.values.push_back(i % 7 ? d(gen) : 0.f);
    pred.values.push_back(d(gen) * noise(gen));
  }
  depth::DepthConfig cfg;
  cfg.median_scaling = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(depth::evaluate_depth(pred, gt, cfg));
  }
}
BENCHMARK(BM_EvaluateDepth)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
