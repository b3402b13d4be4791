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

#include <bit>
#include <cmath>
#include <cstring>

#include "robobench/error.hpp"
#include "robobench/io.hpp"

namespace robobench::io
{

namespace
{

static_assert(std::endian::native == std::endian::little, "big-endian hosts are not supported");

float load_f32(const std::uint8_t * p)
{
  float v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

void store_f32(std::uint8_t * p, float v) { std::memcpy(p, &v, sizeof v); }

}  // namespace

Bytes encode_pointcloud(const lidar::PointCloud & pc)
{
  Bytes out(pc.size() * kPointRecordBytes);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const auto & p = pc.points[i];
    if (p.ring < lidar::kNoRing) {
      throw ValidationError("point " + std::to_string(i) + " has a negative ring index");
    }
    std::uint8_t * rec = out.data() + i * kPointRecordBytes;
    store_f32(rec, p.x);
    store_f32(rec + 4, p.y);
    store_f32(rec + 8, p.z);
    store_f32(rec + 12, p.intensity);
    store_f32(rec + 16, static_cast<float>(p.ring));
  }
  return out;
}

lidar::PointCloud decode_pointcloud(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() % kPointRecordBytes != 0) {
    throw DecodeError(
      "point cloud length " + std::to_string(bytes.size()) + " is not a multiple of " +
      std::to_string(kPointRecordBytes) + " bytes");
  }
  lidar::PointCloud pc;
  pc.points.resize(bytes.size() / kPointRecordBytes);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const std::uint8_t * rec = bytes.data() + i * kPointRecordBytes;
    float f[5];
    for (int k = 0; k < 5; ++k) {
      f[k] = load_f32(rec + 4 * k);
      if (!std::isfinite(f[k])) {
        throw DecodeError(
          "point " + std::to_string(i) + " has a non-finite value in field " + std::to_string(k));
      }
    }
    // Rings are small integers (a few hundred at most); 2^24 keeps the float
    // exactly representable.
    if (f[4] != std::floor(f[4]) || f[4] < -1.f || f[4] > 16777216.f) {
      throw DecodeError("point " + std::to_string(i) + " has a non-integral ring value");
    }
    pc.points[i] = {f[0], f[1], f[2], f[3], static_cast<std::int32_t>(f[4])};
  }
  return pc;
}

lidar::PointCloud read_pointcloud(const fs::path & path)
{
  const Bytes bytes = read_file(path);
  try {
    return decode_pointcloud(bytes);
  } catch (const DecodeError & e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

void write_pointcloud(const lidar::PointCloud & pc, const fs::path & path)
{
  write_file_atomic(path, encode_pointcloud(pc));
}

}  // namespace robobench::io
