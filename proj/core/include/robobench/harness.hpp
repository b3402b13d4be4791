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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "robobench/manifest.hpp"
#include "robobench/params.hpp"
#include "robobench/score_table.hpp"
#include "robobench/submission.hpp"

namespace robobench
{

/// Toolkit version recorded in every score table.
std::string toolkit_version();

struct RunConfig
{
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks the hardware concurrency. Never changes output.
  unsigned jobs = 1;
  bool median_scale = false;  // depth
  bool micro_average = false;  // depth
};

/// Runs fn(0..n-1) on `jobs` threads. Exceptions are captured per index and
/// returned in index order (empty string = success).
std::vector<std::string> parallel_for(
  std::size_t n, unsigned jobs, const std::function<void(std::size_t)> & fn);

struct CorruptReport
{
  std::filesystem::path manifest_path;
  std::size_t samples_written = 0;
  /// (sample id, error) for every sample that could not be processed.
  std::vector<std::pair<std::string, std::string>> failures;
};

/// Writes `<out>/<id>/<camera>.png`, `<out>/<id>/lidar.bin`, a copy of the GT
/// as `<out>/<id>/gt<ext>`, and `<out>/manifest.json` listing the samples that
/// succeeded. Severity 0 and clean samples are copied byte for byte.
CorruptReport cmd_corrupt(
  const Manifest & manifest, const std::filesystem::path & out_dir, const RunConfig & cfg,
  const ParamsTable & params);

struct EvalResult
{
  ScoreTable table;
  std::vector<std::string> warnings;
};

/// Scores a submission per corruption group of the manifest. Groups whose
/// metric is undefined become absent rows (with a warning).
EvalResult cmd_eval(
  const Manifest & manifest, const Submission & submission, const RunConfig & cfg,
  const ParamsTable & params);

struct Leaderboard
{
  std::vector<ScoreTable> ranked;
  std::string csv;
  std::string markdown;
};

/// Ranks tables of one track; throws ValidationError on mixed tracks.
Leaderboard cmd_report(const std::vector<ScoreTable> & tables);

}  // namespace robobench
