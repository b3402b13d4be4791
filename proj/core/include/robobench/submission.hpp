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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "robobench/detection_metrics.hpp"
#include "robobench/manifest.hpp"

namespace robobench
{

inline constexpr int kSubmissionSchemaVersion = 1;

/// First line of every submission file.
struct SubmissionHeader
{
  int schema_version = kSubmissionSchemaVersion;
  Track track = Track::bev_detection;
  std::string team;
  std::string method;
  /// RFC 3339 UTC ("2023-09-30T12:00:00Z"); orders leaderboard ties.
  std::optional<std::string> submitted_at;
};

struct GridPrediction
{
  enum class Format { labels, probabilities };
  SampleId sample;
  Format format = Format::labels;
  fs::path path;
};

struct DepthPrediction
{
  SampleId sample;
  fs::path path;
};

/// A parsed submission. Exactly one of the prediction lists is used,
/// depending on the track.
struct Submission
{
  SubmissionHeader header;
  std::vector<detection::DetBox> boxes;
  std::vector<GridPrediction> grids;
  std::vector<DepthPrediction> depths;
};

struct SubmissionOptions
{
  /// Relative prediction file paths resolve against this directory.
  fs::path base_dir;
  /// When set, every record's sample id must belong to the manifest.
  const Manifest * manifest = nullptr;
};

/// JSON-lines: a header object, then one record per line. Errors name the
/// record index (0 = first record after the header) and the line.
Submission parse_submission(std::string_view text, Track track, const SubmissionOptions & opts);
Submission load_submission(const fs::path & path, Track track, const Manifest * manifest = nullptr);

/// True for "YYYY-MM-DDTHH:MM:SS[.fraction]Z".
bool is_rfc3339_utc(std::string_view s);

}  // namespace robobench
