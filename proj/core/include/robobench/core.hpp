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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "robobench/error.hpp"

namespace robobench
{

/// Every perturbation the toolkit knows about. The 18 camera corruptions come
/// first in leaderboard column order, then the three LiDAR failure modes.
enum class CorruptionType : std::uint8_t {
  brightness,
  low_light,
  fog,
  frost,
  snow,
  contrast,
  defocus_blur,
  glass_blur,
  motion_blur,
  zoom_blur,
  elastic_transform,
  quantization,
  gaussian_noise,
  impulse_noise,
  shot_noise,
  iso_noise,
  pixelate,
  jpeg_compression,
  lidar_points_drop,
  lidar_angular_restrict,
  lidar_beam_drop,
  clean,
};

inline constexpr std::size_t kNumCorruptionTypes = 22;

inline constexpr std::array<CorruptionType, 18> kCameraCorruptions = {
  CorruptionType::brightness,     CorruptionType::low_light,
  CorruptionType::fog,            CorruptionType::frost,
  CorruptionType::snow,           CorruptionType::contrast,
  CorruptionType::defocus_blur,   CorruptionType::glass_blur,
  CorruptionType::motion_blur,    CorruptionType::zoom_blur,
  CorruptionType::elastic_transform, CorruptionType::quantization,
  CorruptionType::gaussian_noise, CorruptionType::impulse_noise,
  CorruptionType::shot_noise,     CorruptionType::iso_noise,
  CorruptionType::pixelate,       CorruptionType::jpeg_compression,
};

inline constexpr std::array<CorruptionType, 3> kLidarCorruptions = {
  CorruptionType::lidar_points_drop,
  CorruptionType::lidar_angular_restrict,
  CorruptionType::lidar_beam_drop,
};

std::span<const CorruptionType> all_corruption_types();

bool is_camera(CorruptionType c);
bool is_lidar(CorruptionType c);

/// Canonical snake_case tag, e.g. "jpeg_compression".
std::string_view format_corruption(CorruptionType c);

/// Inverse of format_corruption. Throws ValidationError listing the valid tags.
CorruptionType parse_corruption(std::string_view name);

/// Severity 0 is the identity level; 1..5 increase distortion.
class Severity
{
public:
  static constexpr int kMax = 5;

  constexpr Severity() = default;
  explicit Severity(int level);

  constexpr int level() const { return level_; }
  constexpr bool is_identity() const { return level_ == 0; }

  friend constexpr bool operator==(Severity, Severity) = default;
  friend constexpr auto operator<=>(Severity, Severity) = default;

private:
  int level_ = 0;
};

/// Opaque per-sample identifier: non-empty, no path separators.
class SampleId
{
public:
  SampleId() = default;
  explicit SampleId(std::string value);

  const std::string & str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const SampleId &, const SampleId &) = default;
  friend auto operator<=>(const SampleId &, const SampleId &) = default;

private:
  std::string value_;
};

struct DerivedSeed
{
  std::uint64_t value = 0;

  friend constexpr bool operator==(DerivedSeed, DerivedSeed) = default;
};

/// FNV-1a 64-bit over a byte string (offset basis 0xcbf29ce484222325,
/// prime 0x100000001b3).
std::uint64_t fnv1a64(std::string_view bytes);

/// StableHash64 of the UTF-8 string
///   decimal(global_seed) 0x1F sample_id 0x1F tag 0x1F decimal(severity)
/// using FNV-1a 64. Identical on every platform.
DerivedSeed derive_seed(
  std::uint64_t global_seed, const SampleId & sample, CorruptionType c, Severity s);

/// Same as derive_seed but keyed by an arbitrary string instead of a SampleId;
/// used for per-camera and per-sensor streams ("<id>:<camera>").
DerivedSeed derive_seed_for_key(
  std::uint64_t global_seed, std::string_view key, CorruptionType c, Severity s);

/// Lowercase 16-digit hexadecimal rendering.
std::string hex64(std::uint64_t v);

}  // namespace robobench
