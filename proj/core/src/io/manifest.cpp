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

#include "robobench/manifest.hpp"

#include <algorithm>
#include <set>

#include "json_fields.hpp"
#include "robobench/io.hpp"

namespace robobench
{

using io::detail::check_keys;
using io::detail::get_integer;
using io::detail::get_string;
using io::detail::json;
using io::detail::require;

namespace
{

constexpr std::array<std::pair<Track, std::string_view>, 5> kTrackNames = {{
  {Track::bev_detection, "bev_detection"},
  {Track::map_segmentation, "map_segmentation"},
  {Track::occupancy, "occupancy"},
  {Track::depth, "depth"},
  {Track::multimodal_detection, "multimodal_detection"},
}};

std::vector<std::string> string_list(const json & v, const std::string & where)
{
  if (!v.is_array()) {
    throw ValidationError(where + ": expected an array of strings");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string() || v[i].get<std::string>().empty()) {
      throw ValidationError(where + "[" + std::to_string(i) + "]: expected a non-empty string");
    }
    if (!seen.insert(v[i].get<std::string>()).second) {
      throw ValidationError(where + ": duplicate entry '" + v[i].get<std::string>() + "'");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

fs::path resolve(const fs::path & base, const json & v, const std::string & where)
{
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw ValidationError(where + ": expected a non-empty path string");
  }
  const fs::path p(v.get<std::string>());
  return p.is_absolute() ? p : base / p;
}

void check_exists(const fs::path & p, const std::string & where)
{
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) {
    throw ValidationError(where + ": file not found: " + p.string());
  }
}

std::string relative_to(const fs::path & p, const fs::path & base)
{
  const fs::path rel = p.lexically_relative(base);
  if (rel.empty() || *rel.begin() == "..") {
    return p.string();
  }
  return rel.generic_string();
}

}  // namespace

std::string_view format_track(Track t)
{
  for (const auto & [track, name] : kTrackNames) {
    if (track == t) {
      return name;
    }
  }
  return "unknown";
}

Track parse_track(std::string_view name)
{
  std::string valid;
  for (const auto & [track, n] : kTrackNames) {
    if (n == name) {
      return track;
    }
    valid += (valid.empty() ? "" : ", ") + std::string(n);
  }
  throw ValidationError("unknown track '" + std::string(name) + "'; expected one of: " + valid);
}

bool is_detection_track(Track t)
{
  return t == Track::bev_detection || t == Track::multimodal_detection;
}

bool is_grid_track(Track t) { return t == Track::map_segmentation || t == Track::occupancy; }

const ManifestSample * Manifest::find(const SampleId & id) const
{
  for (const auto & s : samples) {
    if (s.id == id) {
      return &s;
    }
  }
  return nullptr;
}

Manifest parse_manifest(std::string_view text, const fs::path & base_dir, ManifestOptions opts)
{
  const json doc = io::detail::parse_json(text, "manifest");
  if (!doc.is_object()) {
    throw ValidationError("manifest: top level must be a JSON object");
  }
  check_keys(
    doc,
    {"schema_version", "track", "classes", "empty_class", "ignore_value", "attributeless_classes",
     "samples"},
    "manifest");
  if (get_integer(doc, "schema_version", "manifest") != kManifestSchemaVersion) {
    throw ValidationError(
      "manifest: unsupported schema_version (expected " + std::to_string(kManifestSchemaVersion) + ")");
  }
  Manifest m;
  m.base_dir = base_dir;
  try {
    m.track = parse_track(get_string(doc, "track", "manifest"));
  } catch (const ValidationError & e) {
    throw ValidationError(std::string("manifest.track: ") + e.what());
  }
  if (doc.contains("classes")) {
    m.classes = string_list(doc["classes"], "manifest.classes");
  }
  if ((is_detection_track(m.track) || is_grid_track(m.track)) && m.classes.empty()) {
    throw ValidationError(
      "manifest.classes: track " + std::string(format_track(m.track)) + " needs a class list");
  }
  if (doc.contains("empty_class")) {
    const std::string e = get_string(doc, "empty_class", "manifest");
    if (std::find(m.classes.begin(), m.classes.end(), e) == m.classes.end()) {
      throw ValidationError("manifest.empty_class: '" + e + "' is not in classes");
    }
    m.empty_class = e;
  }
  if (doc.contains("ignore_value")) {
    const auto v = get_integer(doc, "ignore_value", "manifest");
    if (v < 0 || v > 0xFFFF) {
      throw ValidationError("manifest.ignore_value: must be in [0, 65535]");
    }
    m.ignore_value = static_cast<std::uint32_t>(v);
    if (m.ignore_value < m.classes.size()) {
      throw ValidationError("manifest.ignore_value: collides with a class index");
    }
  }
  if (doc.contains("attributeless_classes")) {
    m.attributeless_classes = string_list(doc["attributeless_classes"], "manifest.attributeless_classes");
    for (const auto & c : m.attributeless_classes) {
      if (std::find(m.classes.begin(), m.classes.end(), c) == m.classes.end()) {
        throw ValidationError("manifest.attributeless_classes: '" + c + "' is not in classes");
      }
    }
  }

  const json & samples = require(doc, "samples", "manifest");
  if (!samples.is_array()) {
    throw ValidationError("manifest.samples: expected an array");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string where = "manifest.samples[" + std::to_string(i) + "]";
    const json & rec = samples[i];
    if (!rec.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    check_keys(rec, {"id", "cameras", "lidar", "gt", "corruption", "severity"}, where);
    ManifestSample s;
    try {
      s.id = SampleId(get_string(rec, "id", where));
    } catch (const ValidationError & e) {
      throw ValidationError(where + ".id: " + e.what());
    }
    if (!ids.insert(s.id.str()).second) {
      throw ValidationError(where + ".id: duplicate sample id '" + s.id.str() + "'");
    }
    const json & cams = require(rec, "cameras", where);
    if (!cams.is_object() || cams.empty()) {
      throw ValidationError(where + ".cameras: expected a non-empty object of camera -> path");
    }
    for (auto it = cams.begin(); it != cams.end(); ++it) {
      const std::string & name = it.key();
      if (name.empty() || name == "lidar" || name == "gt" || name == "." || name == ".." ||
          name.find_first_of("/\\") != std::string::npos) {
        throw ValidationError(where + ".cameras: invalid camera name '" + name + "'");
      }
      s.cameras[name] = resolve(base_dir, *it, where + ".cameras." + name);
    }
    if (rec.contains("lidar")) {
      s.lidar = resolve(base_dir, rec["lidar"], where + ".lidar");
    }
    if (rec.contains("gt")) {
      s.gt = resolve(base_dir, rec["gt"], where + ".gt");
    }
    try {
      s.corruption = parse_corruption(get_string(rec, "corruption", where));
    } catch (const ValidationError & e) {
      throw ValidationError(where + ".corruption: " + e.what());
    }
    const auto sev = get_integer(rec, "severity", where);
    if (sev < 0 || sev > Severity::kMax) {
      throw ValidationError(where + ".severity: must be in [0, 5]");
    }
    s.severity = Severity(static_cast<int>(sev));
    if (s.corruption == CorruptionType::clean && !s.severity.is_identity()) {
      throw ValidationError(where + ".severity: clean samples must have severity 0");
    }
    if (is_lidar(s.corruption)) {
      if (m.track != Track::multimodal_detection) {
        throw ValidationError(
          where + ".corruption: modality mismatch, LiDAR failure '" +
          std::string(format_corruption(s.corruption)) + "' on camera-only track " +
          std::string(format_track(m.track)));
      }
      if (!s.lidar) {
        throw ValidationError(where + ".lidar: LiDAR failure needs a point cloud path");
      }
    }
    if (s.lidar && m.track != Track::multimodal_detection) {
      throw ValidationError(
        where + ".lidar: modality mismatch, track " + std::string(format_track(m.track)) +
        " has no LiDAR input");
    }
    if (opts.check_files) {
      for (const auto & [name, p] : s.cameras) {
        check_exists(p, where + ".cameras." + name);
      }
      if (s.lidar) {
        check_exists(*s.lidar, where + ".lidar");
      }
      if (s.gt) {
        check_exists(*s.gt, where + ".gt");
      }
    }
    m.samples.push_back(std::move(s));
  }
  return m;
}

Manifest load_manifest(const fs::path & path, ManifestOptions opts)
{
  const std::string text = io::read_text_file(path);
  try {
    return parse_manifest(text, path.parent_path(), opts);
  } catch (const ValidationError & e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string serialize_manifest(const Manifest & m, const fs::path & base_dir)
{
  nlohmann::ordered_json doc;
  doc["schema_version"] = kManifestSchemaVersion;
  doc["track"] = std::string(format_track(m.track));
  if (!m.classes.empty()) {
    doc["classes"] = m.classes;
  }
  if (m.empty_class) {
    doc["empty_class"] = *m.empty_class;
  }
  doc["ignore_value"] = m.ignore_value;
  if (!m.attributeless_classes.empty()) {
    doc["attributeless_classes"] = m.attributeless_classes;
  }
  doc["samples"] = nlohmann::ordered_json::array();
  for (const auto & s : m.samples) {
    nlohmann::ordered_json rec;
    rec["id"] = s.id.str();
    nlohmann::ordered_json cams = nlohmann::ordered_json::object();
    for (const auto & [name, p] : s.cameras) {
      cams[name] = relative_to(p, base_dir);
    }
    rec["cameras"] = cams;
    if (s.lidar) {
      rec["lidar"] = relative_to(*s.lidar, base_dir);
    }
    if (s.gt) {
      rec["gt"] = relative_to(*s.gt, base_dir);
    }
    rec["corruption"] = std::string(format_corruption(s.corruption));
    rec["severity"] = s.severity.level();
    doc["samples"].push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

std::vector<detection::GtBox> parse_gt_boxes(std::string_view text, const SampleId & sample)
{
  std::vector<detection::GtBox> out;
  std::size_t index = 0;
  io::detail::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    const std::string where =
      "ground truth record " + std::to_string(index) + " (line " + std::to_string(lineno) + ")";
    const json rec = io::detail::parse_json(line, where);
    if (!rec.is_object()) {
      throw ValidationError(where + ": expected a JSON object");
    }
    check_keys(
      rec, {"sample", "translation", "size", "yaw", "velocity", "class_name", "attribute"}, where);
    if (rec.contains("sample") && (!rec["sample"].is_string() || rec["sample"].get<std::string>() != sample.str())) {
      throw ValidationError(where + ": sample does not match '" + sample.str() + "'");
    }
    detection::GtBox box;
    box.sample = sample;
    io::detail::read_box(rec, box, where);
    out.push_back(std::move(box));
    ++index;
  });
  return out;
}

std::vector<detection::GtBox> load_gt_boxes(const fs::path & path, const SampleId & sample)
{
  const std::string text = io::read_text_file(path);
  try {
    return parse_gt_boxes(text, sample);
  } catch (const ValidationError & e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace robobench
