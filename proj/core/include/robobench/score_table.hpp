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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "robobench/core.hpp"
#include "robobench/manifest.hpp"

namespace robobench
{

/// Headline metric of a track: "nds" (detection), "miou" (grids), "abs_rel"
/// (depth, lower is better).
std::string_view track_metric(Track t);
bool higher_is_better(Track t);

/// Corruption rows reported for a track, in leaderboard column order: the 18
/// camera corruptions, plus the three LiDAR failures for multimodal detection.
std::vector<CorruptionType> track_rows(Track t);

struct ScoreRow
{
  CorruptionType corruption = CorruptionType::clean;
  std::optional<double> value;  // absent when no sample was scored
  std::size_t num_samples = 0;

  friend bool operator==(const ScoreRow &, const ScoreRow &) = default;
};

struct ScoreMetadata
{
  std::string team;
  std::string method;
  std::string timestamp;  // submission's submitted_at, empty if unknown
  std::string toolkit_version;
  std::string params_hash;  // 16 hex digits
  std::uint64_t seed = 0;

  friend bool operator==(const ScoreMetadata &, const ScoreMetadata &) = default;
};

struct ScoreTable
{
  Track track = Track::bev_detection;
  std::vector<ScoreRow> rows;
  std::optional<double> clean;  // reported separately, not in the headline
  std::optional<double> headline;  // mean of present rows
  ScoreMetadata metadata;

  std::string_view metric() const { return track_metric(track); }

  /// Deterministic JSON (fixed key order, shortest round-trip doubles).
  std::string to_json() const;
  static ScoreTable from_json(std::string_view text);

  friend bool operator==(const ScoreTable &, const ScoreTable &) = default;
};

/// Arithmetic mean of the present values in order; nullopt if none present.
std::optional<double> headline_mean(std::span<const std::optional<double>> values);

/// Builds a table with rows in track order; corruptions missing from
/// `values` are absent rows. The headline is recomputed from the rows.
ScoreTable make_score_table(
  Track track, const std::vector<ScoreRow> & rows, std::optional<double> clean,
  ScoreMetadata metadata);

/// Strict weak "ranks before" on tables of one track: better headline first
/// (absent headline last), then earlier timestamp (empty last), then team,
/// then method.
bool ranks_before(const ScoreTable & a, const ScoreTable & b);

/// Indices of `tables` in leaderboard order (stable for full ties). Throws
/// ValidationError on an empty list or mixed tracks.
std::vector<std::size_t> rank_tables(std::span<const ScoreTable> tables);

/// Best table per team, in leaderboard order.
std::vector<ScoreTable> best_per_team(std::span<const ScoreTable> tables);

/// Ranked leaderboards. Values are printed x100 with two decimals; the best
/// value of every column is marked with '*' (CSV) or bold (Markdown).
std::string render_csv(std::span<const ScoreTable> ranked);
std::string render_markdown(std::span<const ScoreTable> ranked);

}  // namespace robobench
