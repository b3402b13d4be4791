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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "robobench/core.hpp"
#include "robobench/detection_metrics.hpp"

namespace robobench
{

namespace fs = std::filesystem;

enum class Track : std::uint8_t {
  bev_detection,
  map_segmentation,
  occupancy,
  depth,
  multimodal_detection,
};

std::string_view format_track(Track t);
/// Throws ValidationError listing the valid names.
Track parse_track(std::string_view name);

bool is_detection_track(Track t);
bool is_grid_track(Track t);

inline constexpr int kManifestSchemaVersion = 1;

struct ManifestSample
{
  SampleId id;
  std::map<std::string, fs::path> cameras;  // camera name -> absolute path
  std::optional<fs::path> lidar;
  std::optional<fs::path> gt;
  CorruptionType corruption = CorruptionType::clean;
  Severity severity;
};

/// A validated manifest. Paths are resolved against the manifest directory.
struct Manifest
{
  Track track = Track::bev_detection;
  std::vector<std::string> classes;
  /// Class excluded from mIoU (e.g. free space in occupancy grids).
  std::optional<std::string> empty_class;
  std::uint32_t ignore_value = 255;
  std::vector<std::string> attributeless_classes;
  fs::path base_dir;
  std::vector<ManifestSample> samples;

  const ManifestSample * find(const SampleId & id) const;
  bool contains(const SampleId & id) const { return find(id) != nullptr; }
};

struct ManifestOptions
{
  /// Verify that every referenced file exists.
  bool check_files = true;
};

/// Diagnostics name the offending field, e.g. "samples[2].severity".
Manifest parse_manifest(std::string_view text, const fs::path & base_dir, ManifestOptions opts = {});
Manifest load_manifest(const fs::path & path, ManifestOptions opts = {});

/// Serializes with paths written relative to `base_dir` where possible.
std::string serialize_manifest(const Manifest & m, const fs::path & base_dir);

/// Ground-truth boxes of one sample: JSON-lines records with the GtBox fields
/// (translation, size, yaw, velocity, class_name, attribute).
std::vector<detection::GtBox> parse_gt_boxes(std::string_view text, const SampleId & sample);
std::vector<detection::GtBox> load_gt_boxes(const fs::path & path, const SampleId & sample);

}  // namespace robobench
