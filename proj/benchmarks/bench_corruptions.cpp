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

#include "fixtures.hpp"
#include "robobench/camera_corruptions.hpp"
#include "robobench/lidar_failures.hpp"

using namespace robobench;

namespace
{

// One 1600x900 camera frame, the nuScenes resolution.
void BM_CameraCorruption(benchmark::State & state)
{
  const auto type = kCameraCorruptions[static_cast<std::size_t>(state.range(0))];
  static const Image img = fixtures::scene_image(1600, 900, 1);
  const auto seed = derive_seed(0, SampleId("bench"), type, Severity(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(camera::corrupt_image(img, type, Severity(3), seed));
  }
  state.SetLabel(std::string(format_corruption(type)));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CameraCorruption)->DenseRange(0, 17)->Unit(benchmark::kMillisecond);

// A 34k-point sweep, roughly one 32-beam LiDAR frame.
void BM_LidarFailure(benchmark::State & state)
{
  const auto type = kLidarCorruptions[static_cast<std::size_t>(state.range(0))];
  const bool rings = state.range(1) != 0;
  const auto pc = fixtures::lidar_cloud(34000, 32, 2, rings);
  const auto seed = derive_seed(0, SampleId("bench"), type, Severity(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lidar::apply_lidar_failure(pc, type, Severity(3), seed));
  }
  state.SetLabel(std::string(format_corruption(type)) + (rings ? "" : " (inferred rings)"));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pc.size()));
}
BENCHMARK(BM_LidarFailure)->ArgsProduct({{0, 1, 2}, {1, 0}})->Unit(benchmark::kMicrosecond);

}  // namespace
