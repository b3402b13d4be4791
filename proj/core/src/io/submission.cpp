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

#include "robobench/submission.hpp"

#include <cctype>
#include <set>

#include "json_fields.hpp"
#include "robobench/io.hpp"

namespace robobench
{

using io::detail::check_keys;
using io::detail::get_integer;
using io::detail::get_number;
using io::detail::get_string;
using io::detail::json;

namespace
{

constexpr std::size_t kMaxNameLength = 128;

std::string bounded_name(const json & obj, const char * key, const std::string & where)
{
  std::string v = get_string(obj, key, where);
  if (v.empty() || v.size() > kMaxNameLength) {
    throw ValidationError(
      where + ": field '" + key + "' must be 1.." + std::to_string(kMaxNameLength) + " characters");
  }
  for (unsigned char ch : v) {
    if (ch < 0x20 || ch == 0x7F) {
      throw ValidationError(where + ": field '" + key + "' contains control characters");
    }
  }
  return v;
}

SubmissionHeader parse_header(std::string_view line, Track track)
{
  const std::string where = "submission header (line 1)";
  const json h = io::detail::parse_json(line, where);
  if (!h.is_object()) {
    throw ValidationError(where + ": expected a JSON object");
  }
  check_keys(h, {"schema_version", "track", "team", "method", "submitted_at"}, where);
  SubmissionHeader out;
  if (get_integer(h, "schema_version", where) != kSubmissionSchemaVersion) {
    throw ValidationError(
      where + ": unsupported schema_version (expected " + std::to_string(kSubmissionSchemaVersion) + ")");
  }
  out.track = parse_track(get_string(h, "track", where));
  if (out.track != track) {
    throw ValidationError(
      where + ": submission is for track " + std::string(format_track(out.track)) + ", expected " +
      std::string(format_track(track)));
  }
  out.team = bounded_name(h, "team", where);
  out.method = bounded_name(h, "method", where);
  if (h.contains("submitted_at") && !h["submitted_at"].is_null()) {
    const std::string ts = get_string(h, "submitted_at", where);
    if (!is_rfc3339_utc(ts)) {
      throw ValidationError(where + ": submitted_at must look like 2023-09-30T12:00:00Z");
    }
    out.submitted_at = ts;
  }
  return out;
}

fs::path prediction_path(const json & rec, const fs::path & base, const std::string & where)
{
  const std::string p = get_string(rec, "path", where);
  if (p.empty()) {
    throw ValidationError(where + ": field 'path' must not be empty");
  }
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

bool is_rfc3339_utc(std::string_view s)
{
  // 2023-09-30T12:00:00Z, optional fraction before Z.
  static constexpr std::string_view kShape = "dddd-dd-ddTdd:dd:dd";
  if (s.size() < kShape.size() + 1 || s.back() != 'Z') {
    return false;
  }
  for (std::size_t i = 0; i < kShape.size(); ++i) {
    const bool digit = std::isdigit(static_cast<unsigned char>(s[i])) != 0;
    if (kShape[i] == 'd' ? !digit : s[i] != kShape[i]) {
      return false;
    }
  }
  std::string_view rest = s.substr(kShape.size(), s.size() - kShape.size() - 1);
  if (rest.empty()) {
    return true;
  }
  if (rest.size() < 2 || rest[0] != '.') {
    return false;
  }
  for (char ch : rest.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      return false;
    }
  }
  return true;
}

Submission parse_submission(std::string_view text, Track track, const SubmissionOptions & opts)
{
  Submission sub;
  bool have_header = false;
  std::size_t index = 0;
  std::set<std::string> manifest_ids;
  if (opts.manifest) {
    for (const auto & s : opts.manifest->samples) {
      manifest_ids.insert(s.id.str());
    }
  }
  std::set<std::string> seen;  // grid / depth: one record per sample

  io::detail::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    if (!have_header) {
      if (lineno != 1) {
        throw ValidationError("submission header must be on line 1");
      }
      sub.header = parse_header(line, track);
      have_header = true;
      return;
    }
    const std::string where =
      "record " + std::to_string(index) + " (line " + std::to_string(lineno) + ")";
    const json rec = io::detail::parse_json(line, where);
    if (!rec.is_object()) {
      throw ValidationError(where + ": expected a JSON object");
    }
    SampleId sample;
    try {
      sample = SampleId(get_string(rec, "sample", where));
    } catch (const ValidationError & e) {
      throw ValidationError(where + ": field 'sample': " + e.what());
    }
    if (opts.manifest && !manifest_ids.contains(sample.str())) {
      throw ValidationError(where + ": unknown sample id '" + sample.str() + "' (not in the manifest)");
    }

    if (is_detection_track(track)) {
      check_keys(
        rec,
        {"sample", "translation", "size", "yaw", "velocity", "class_name", "attribute", "score"},
        where);
      detection::DetBox box;
      box.sample = sample;
      box.score = get_number(rec, "score", where);
      if (box.score < 0.0 || box.score > 1.0) {
        throw ValidationError(where + ": field 'score' must be in [0, 1]");
      }
      io::detail::read_box(rec, box, where);
      if (opts.manifest) {
        const auto & classes = opts.manifest->classes;
        if (std::find(classes.begin(), classes.end(), box.class_name) == classes.end()) {
          throw ValidationError(where + ": unknown class_name '" + box.class_name + "'");
        }
      }
      sub.boxes.push_back(std::move(box));
    } else {
      if (!seen.insert(sample.str()).second) {
        throw ValidationError(where + ": duplicate prediction for sample '" + sample.str() + "'");
      }
      if (is_grid_track(track)) {
        check_keys(rec, {"sample", "format", "path"}, where);
        GridPrediction g;
        g.sample = sample;
        const std::string fmt = rec.contains("format") ? get_string(rec, "format", where) : "labels";
        if (fmt == "labels") {
          g.format = GridPrediction::Format::labels;
        } else if (fmt == "probabilities") {
          g.format = GridPrediction::Format::probabilities;
        } else {
          throw ValidationError(where + ": field 'format' must be 'labels' or 'probabilities'");
        }
        g.path = prediction_path(rec, opts.base_dir, where);
        sub.grids.push_back(std::move(g));
      } else {
        check_keys(rec, {"sample", "path"}, where);
        sub.depths.push_back({sample, prediction_path(rec, opts.base_dir, where)});
      }
    }
    ++index;
  });
  if (!have_header) {
    throw ValidationError("submission is empty; the first line must be a header object");
  }
  return sub;
}

Submission load_submission(const fs::path & path, Track track, const Manifest * manifest)
{
  const std::string text = io::read_text_file(path);
  try {
    return parse_submission(text, track, {path.parent_path(), manifest});
  } catch (const ValidationError & e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace robobench
