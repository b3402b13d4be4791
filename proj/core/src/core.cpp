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

#include "robobench/core.hpp"

#include <algorithm>
#include <cstdio>

namespace robobench
{
namespace
{
constexpr std::array<CorruptionType, kNumCorruptionTypes> kAll = {
  CorruptionType::brightness,        CorruptionType::low_light,
  CorruptionType::fog,               CorruptionType::frost,
  CorruptionType::snow,              CorruptionType::contrast,
  CorruptionType::defocus_blur,      CorruptionType::glass_blur,
  CorruptionType::motion_blur,       CorruptionType::zoom_blur,
  CorruptionType::elastic_transform, CorruptionType::quantization,
  CorruptionType::gaussian_noise,    CorruptionType::impulse_noise,
  CorruptionType::shot_noise,        CorruptionType::iso_noise,
  CorruptionType::pixelate,          CorruptionType::jpeg_compression,
  CorruptionType::lidar_points_drop, CorruptionType::lidar_angular_restrict,
  CorruptionType::lidar_beam_drop,   CorruptionType::clean,
};

constexpr std::array<std::string_view, kNumCorruptionTypes> kNames = {
  "brightness",        "low_light",
  "fog",               "frost",
  "snow",              "contrast",
  "defocus_blur",      "glass_blur",
  "motion_blur",       "zoom_blur",
  "elastic_transform", "quantization",
  "gaussian_noise",    "impulse_noise",
  "shot_noise",        "iso_noise",
  "pixelate",          "jpeg_compression",
  "lidar_points_drop", "lidar_angular_restrict",
  "lidar_beam_drop",   "clean",
};
}  // namespace

std::span<const CorruptionType> all_corruption_types() { return kAll; }

bool is_camera(CorruptionType c) { return static_cast<int>(c) < 18; }

bool is_lidar(CorruptionType c)
{
  return c == CorruptionType::lidar_points_drop || c == CorruptionType::lidar_angular_restrict ||
         c == CorruptionType::lidar_beam_drop;
}

std::string_view format_corruption(CorruptionType c)
{
  return kNames.at(static_cast<std::size_t>(c));
}

CorruptionType parse_corruption(std::string_view name)
{
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it != kNames.end()) {
    return kAll[static_cast<std::size_t>(it - kNames.begin())];
  }
  std::string msg = "unknown corruption '" + std::string(name) + "'; valid tags:";
  for (auto n : kNames) {
    msg += ' ';
    msg += n;
  }
  throw ValidationError(msg);
}

Severity::Severity(int level) : level_(level)
{
  if (level < 0 || level > kMax) {
    throw ValidationError("severity must be in [0, 5], got " + std::to_string(level));
  }
}

SampleId::SampleId(std::string value) : value_(std::move(value))
{
  if (value_.empty()) {
    throw ValidationError("sample id must be non-empty");
  }
  if (value_.find_first_of("/\\") != std::string::npos) {
    throw ValidationError("sample id '" + value_ + "' contains a path separator");
  }
  if (value_ == "." || value_ == "..") {
    throw ValidationError("sample id must not be '.' or '..'");
  }
  for (unsigned char ch : value_) {
    if (ch < 0x20 || ch == 0x7F) {
      throw ValidationError("sample id contains control characters");
    }
  }
}

std::uint64_t fnv1a64(std::string_view bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

DerivedSeed derive_seed_for_key(
  std::uint64_t global_seed, std::string_view key, CorruptionType c, Severity s)
{
  std::string buf = std::to_string(global_seed);
  buf += '\x1f';
  buf += key;
  buf += '\x1f';
  buf += format_corruption(c);
  buf += '\x1f';
  buf += std::to_string(s.level());
  return DerivedSeed{fnv1a64(buf)};
}

DerivedSeed derive_seed(
  std::uint64_t global_seed, const SampleId & sample, CorruptionType c, Severity s)
{
  return derive_seed_for_key(global_seed, sample.str(), c, s);
}

std::string hex64(std::uint64_t v)
{
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace robobench
