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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "robobench/image.hpp"
#include "robobench/lidar_failures.hpp"

namespace robobench::io
{

namespace fs = std::filesystem;
using Bytes = std::vector<std::uint8_t>;

// ---- files ----------------------------------------------------------------

/// Throws IoError naming the path when the file cannot be read.
Bytes read_file(const fs::path & path);
std::string read_text_file(const fs::path & path);

/// Writes to `<path>.tmp`, fsyncs, then renames over `path`.
void write_file_atomic(const fs::path & path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const fs::path & path, std::string_view text);

// ---- PNG ------------------------------------------------------------------

/// Largest accepted width or height; protects against hostile headers.
inline constexpr std::uint32_t kMaxImageDim = 16384;

Bytes encode_png(const Image & img);
/// Accepts 8-bit RGB only. Other colour types and depths raise DecodeError with
/// a conversion hint.
Image decode_png(std::span<const std::uint8_t> bytes);

Image read_image(const fs::path & path);
void write_image(const Image & img, const fs::path & path);

struct Gray16
{
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> values;  // row-major

  friend bool operator==(const Gray16 &, const Gray16 &) = default;
};

Bytes encode_png_gray16(const Gray16 & img);
Gray16 decode_png_gray16(std::span<const std::uint8_t> bytes);

// ---- JPEG -----------------------------------------------------------------

/// Baseline JPEG, 4:2:0 chroma subsampling, integer DCT. Deterministic for a
/// given libjpeg build.
Bytes encode_jpeg(const Image & img, int quality);
Image decode_jpeg(std::span<const std::uint8_t> bytes);

// ---- point clouds ---------------------------------------------------------
//
// Little-endian float32 x5 per point: x, y, z, intensity, ring. The ring is an
// integral float; -1 marks a sensor without a ring channel.

inline constexpr std::size_t kPointRecordBytes = 20;

Bytes encode_pointcloud(const lidar::PointCloud & pc);
/// Throws DecodeError on misaligned length, non-finite values, or a ring that
/// is not an integer >= -1.
lidar::PointCloud decode_pointcloud(std::span<const std::uint8_t> bytes);

lidar::PointCloud read_pointcloud(const fs::path & path);
void write_pointcloud(const lidar::PointCloud & pc, const fs::path & path);

// ---- grid container -------------------------------------------------------
//
//   offset  size  field
//   0       7     magic "RBGRID1"
//   7       1     dtype: 1 = u8, 2 = u16 (LE), 3 = f32 (LE)
//   8       1     rank: 2 (H, W) or 3 (C, H, W)
//   9       3     reserved, zero
//   12      4     ignore_value, u32 LE
//   16      4*rank dims, u32 LE, outermost first
//   ...           payload, row-major, exactly prod(dims) elements

inline constexpr char kGridMagic[] = "RBGRID1";
inline constexpr std::uint64_t kMaxGridElements = std::uint64_t{1} << 28;

enum class GridDType : std::uint8_t { u8 = 1, u16 = 2, f32 = 3 };

struct GridContainer
{
  GridDType dtype = GridDType::u8;
  std::uint32_t ignore_value = 255;
  std::vector<std::uint32_t> dims;
  std::vector<std::uint32_t> labels;  // u8 / u16 payloads
  std::vector<float> values;  // f32 payloads

  std::uint64_t num_elements() const;
  friend bool operator==(const GridContainer &, const GridContainer &) = default;
};

Bytes encode_grid(const GridContainer & grid);
GridContainer decode_grid(std::span<const std::uint8_t> bytes);

GridContainer read_grid(const fs::path & path);
void write_grid(const GridContainer & grid, const fs::path & path);

// ---- depth maps -----------------------------------------------------------

/// Metres per unit of a 16-bit depth PNG: value / 256.
inline constexpr double kDepthPngScale = 256.0;

struct DepthMap
{
  int width = 0;
  int height = 0;
  std::vector<float> values;  // metres, 0 or non-finite = no measurement
};

/// Detects the format from the leading bytes: 16-bit grayscale PNG or a rank-2
/// f32 grid container.
DepthMap decode_depth(std::span<const std::uint8_t> bytes);
DepthMap read_depth(const fs::path & path);

/// 16-bit PNG; values round to the nearest 1/256 m, non-finite or negative
/// values are written as 0.
void write_depth_png(const DepthMap & depth, const fs::path & path);
/// Lossless f32 grid container.
void write_depth_grid(const DepthMap & depth, const fs::path & path);

}  // namespace robobench::io
