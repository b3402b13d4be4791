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

#include <algorithm>
#include <cmath>
#include <cstring>

#include "robobench/error.hpp"
#include "robobench/io.hpp"

namespace robobench::io
{

namespace
{

void check_shape(const DepthMap & d)
{
  if (d.width <= 0 || d.height <= 0) {
    throw ValidationError("depth map is empty");
  }
  if (d.values.size() != static_cast<std::size_t>(d.width) * d.height) {
    throw ValidationError("depth map value count does not match its dimensions");
  }
}

}  // namespace

DepthMap decode_depth(std::span<const std::uint8_t> bytes)
{
  static constexpr std::uint8_t kPngSig[4] = {0x89, 'P', 'N', 'G'};
  DepthMap d;
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kPngSig, 4) == 0) {
    const Gray16 g = decode_png_gray16(bytes);
    d.width = g.width;
    d.height = g.height;
    d.values.resize(g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      d.values[i] = static_cast<float>(g.values[i] / kDepthPngScale);
    }
    return d;
  }
  if (bytes.size() >= 7 && std::memcmp(bytes.data(), kGridMagic, 7) == 0) {
    GridContainer g = decode_grid(bytes);
    if (g.dtype != GridDType::f32 || g.dims.size() != 2) {
      throw DecodeError("depth grid container must be rank 2 with f32 payload");
    }
    if (g.dims[0] == 0 || g.dims[1] == 0 || g.dims[0] > kMaxImageDim || g.dims[1] > kMaxImageDim) {
      throw DecodeError("depth grid dimensions out of range");
    }
    d.height = static_cast<int>(g.dims[0]);
    d.width = static_cast<int>(g.dims[1]);
    d.values = std::move(g.values);
    return d;
  }
  throw DecodeError("unrecognized depth format; expected 16-bit PNG or RBGRID1 f32 container");
}

DepthMap read_depth(const fs::path & path)
{
  const Bytes bytes = read_file(path);
  try {
    return decode_depth(bytes);
  } catch (const DecodeError & e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

void write_depth_png(const DepthMap & depth, const fs::path & path)
{
  check_shape(depth);
  Gray16 g{depth.width, depth.height, std::vector<std::uint16_t>(depth.values.size())};
  for (std::size_t i = 0; i < depth.values.size(); ++i) {
    const double v = depth.values[i];
    if (!std::isfinite(v) || v <= 0.0) {
      continue;
    }
    g.values[i] = static_cast<std::uint16_t>(std::min(65535.0, std::floor(v * kDepthPngScale + 0.5)));
  }
  write_file_atomic(path, encode_png_gray16(g));
}

void write_depth_grid(const DepthMap & depth, const fs::path & path)
{
  check_shape(depth);
  GridContainer g;
  g.dtype = GridDType::f32;
  g.ignore_value = 0;
  g.dims = {static_cast<std::uint32_t>(depth.height), static_cast<std::uint32_t>(depth.width)};
  g.values = depth.values;
  write_grid(g, path);
}

}  // namespace robobench::io
