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
#include "robobench/io.hpp"

using namespace robobench;

namespace
{

void BM_PngEncode(benchmark::State & state)
{
  const auto img = fixtures::scene_image(1600, 900, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(io::encode_png(img));
  }
}
BENCHMARK(BM_PngEncode)->Unit(benchmark::kMillisecond);

void BM_PngDecode(benchmark::State & state)
{
  const auto bytes = io::encode_png(fixtures::scene_image(1600, 900, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(io::decode_png(bytes));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_PngDecode)->Unit(benchmark::kMillisecond);

void BM_PointCloudRoundTrip(benchmark::State & state)
{
  const auto pc = fixtures::lidar_cloud(34000, 32, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(io::decode_pointcloud(io::encode_pointcloud(pc)));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(pc.size() * io::kPointRecordBytes));
}
BENCHMARK(BM_PointCloudRoundTrip)->Unit(benchmark::kMicrosecond);

void BM_GridDecode(benchmark::State & state)
{
  io::GridContainer g;
  g.dims = {200, 200, 16};
  g.labels.assign(200u * 200u * 16u, 3);
  const auto bytes = io::encode_grid(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(io::decode_grid(bytes));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_GridDecode)->Unit(benchmark::kMicrosecond);

}  // namespace
