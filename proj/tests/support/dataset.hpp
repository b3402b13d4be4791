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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "robobench/io.hpp"
#include "robobench/manifest.hpp"
#include "robobench/score_table.hpp"

namespace robobench::fixtures
{

namespace fs = std::filesystem;

struct DatasetOptions
{
  Track track = Track::bev_detection;
  int samples_per_group = 2;
  int severity = 3;
  bool include_clean = true;
  /// Corruption groups to emit; empty means every row of the track.
  std::vector<CorruptionType> corruptions;
  int width = 48;
  int height = 32;
  std::uint32_t seed = 1;
};

struct Dataset
{
  fs::path dir;
  fs::path manifest_path;
  Manifest manifest;
  std::map<std::string, std::vector<detection::GtBox>> boxes;  // detection GT
};

inline std::vector<std::string> dataset_classes(Track t)
{
  if (is_detection_track(t)) {
    return {"car", "pedestrian", "barrier"};
  }
  if (t == Track::occupancy) {
    return {"free", "vehicle", "building"};
  }
  if (t == Track::map_segmentation) {
    return {"background", "drivable", "lane"};
  }
  return {};
}

inline nlohmann::json box_json(const detection::GtBox & b)
{
  nlohmann::json j;
  j["translation"] = b.translation;
  j["size"] = b.size;
  j["yaw"] = b.yaw;
  j["velocity"] = b.velocity;
  j["class_name"] = b.class_name;
  j["attribute"] = b.attribute ? nlohmann::json(*b.attribute) : nlohmann::json(nullptr);
  return j;
}

/// Writes images, point clouds, ground truth and manifest.json under `dir`.
inline Dataset write_dataset(const fs::path & dir, const DatasetOptions & opts = {})
{
  fs::create_directories(dir / "raw");
  std::mt19937 gen(opts.seed);
  std::uniform_real_distribution<double> pos(-20, 20), size(0.8, 4.0), yaw(-3.1, 3.1), vel(-3, 3);
  std::uniform_int_distribution<int> nboxes(2, 6);
  const auto classes = dataset_classes(opts.track);

  nlohmann::ordered_json doc;
  doc["schema_version"] = kManifestSchemaVersion;
  doc["track"] = std::string(format_track(opts.track));
  if (!classes.empty()) {
    doc["classes"] = classes;
  }
  if (opts.track == Track::occupancy) {
    doc["empty_class"] = "free";
  }
  if (is_detection_track(opts.track)) {
    doc["attributeless_classes"] = {"barrier"};
  }
  doc["samples"] = nlohmann::ordered_json::array();

  std::vector<std::pair<CorruptionType, int>> groups;
  for (auto c : opts.corruptions.empty() ? track_rows(opts.track) : opts.corruptions) {
    groups.emplace_back(c, opts.severity);
  }
  if (opts.include_clean) {
    groups.emplace_back(CorruptionType::clean, 0);
  }

  Dataset ds;
  ds.dir = dir;
  int counter = 0;
  for (const auto & [c, sev] : groups) {
    for (int k = 0; k < opts.samples_per_group; ++k, ++counter) {
      const std::string id = std::string(format_corruption(c)) + "-" + std::to_string(k);
      nlohmann::ordered_json rec;
      rec["id"] = id;
      const std::string img = "raw/" + id + ".png";
      io::write_image(scene_image(opts.width, opts.height, opts.seed * 1000 + counter), dir / img);
      rec["cameras"] = {{"CAM_FRONT", img}};
      if (opts.track == Track::multimodal_detection) {
        const std::string pc = "raw/" + id + ".bin";
        io::write_pointcloud(lidar_cloud(1500, 32, opts.seed * 1000 + counter), dir / pc);
        rec["lidar"] = pc;
      }
      if (is_detection_track(opts.track)) {
        std::string text;
        auto & boxes = ds.boxes[id];
        const int n = nboxes(gen);
        for (int b = 0; b < n; ++b) {
          detection::GtBox g;
          g.sample = SampleId(id);
          g.translation = {pos(gen), pos(gen), 0.5};
          g.size = {size(gen), size(gen), 1.5};
          g.yaw = yaw(gen);
          g.class_name = classes[static_cast<std::size_t>(b) % classes.size()];
          if (g.class_name != "barrier") {
            g.velocity = {vel(gen), vel(gen)};
            g.attribute = b % 2 ? "moving" : "parked";
          }
          boxes.push_back(g);
          text += box_json(g).dump() + "\n";
        }
        io::write_file_atomic(dir / "raw" / (id + ".jsonl"), std::string_view(text));
        rec["gt"] = "raw/" + id + ".jsonl";
      } else if (is_grid_track(opts.track)) {
        io::GridContainer g;
        g.dims = {12, 16};
        std::uniform_int_distribution<std::uint32_t> lab(0, 2);
        for (std::uint32_t i = 0; i < 12 * 16; ++i) {
          g.labels.push_back(i % 17 == 0 ? 255 : lab(gen));
        }
        io::write_grid(g, dir / "raw" / (id + ".rbg"));
        rec["gt"] = "raw/" + id + ".rbg";
      } else {
        io::DepthMap d{16, 12, {}};
        std::uniform_real_distribution<float> z(2.f, 60.f);
        for (int i = 0; i < 16 * 12; ++i) {
          d.values.push_back(i % 11 == 0 ? 0.f : z(gen));
        }
        io::write_depth_grid(d, dir / "raw" / (id + ".rbg"));
        rec["gt"] = "raw/" + id + ".rbg";
      }
      rec["corruption"] = std::string(format_corruption(c));
      rec["severity"] = sev;
      doc["samples"].push_back(rec);
    }
  }
  ds.manifest_path = dir / "manifest.json";
  io::write_file_atomic(ds.manifest_path, std::string_view(doc.dump(2)));
  ds.manifest = load_manifest(ds.manifest_path);
  return ds;
}

struct SubmissionSpec
{
  std::string team = "team";
  std::string method = "method";
  std::string submitted_at = {};  // empty: omitted
  double noise = 0.0;  // 0 gives a perfect submission
  std::uint32_t seed = 7;
};

/// Builds submission text for `ds`; grid and depth predictions are written
/// under `pred_dir` and referenced by absolute path.
inline std::string make_submission(const Dataset & ds, const fs::path & pred_dir, const SubmissionSpec & spec)
{
  const Track track = ds.manifest.track;
  nlohmann::ordered_json h;
  h["schema_version"] = 1;
  h["track"] = std::string(format_track(track));
  h["team"] = spec.team;
  h["method"] = spec.method;
  if (!spec.submitted_at.empty()) {
    h["submitted_at"] = spec.submitted_at;
  }
  std::string text = h.dump() + "\n";
  std::mt19937 gen(spec.seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  for (const auto & s : ds.manifest.samples) {
    const std::string id = s.id.str();
    if (is_detection_track(track)) {
      for (const auto & g : ds.boxes.at(id)) {
        if (spec.noise > 0 && u01(gen) < spec.noise / 2) {
          continue;  // missed detection
        }
        auto j = box_json(g);
        j["sample"] = id;
        j["translation"][0] = g.translation[0] + spec.noise * n01(gen);
        j["translation"][1] = g.translation[1] + spec.noise * n01(gen);
        j["yaw"] = g.yaw + spec.noise * 0.3 * n01(gen);
        j["score"] = spec.noise > 0 ? std::clamp(1.0 - spec.noise * u01(gen), 0.0, 1.0) : 1.0;
        text += j.dump() + "\n";
      }
    } else if (is_grid_track(track)) {
      auto g = io::read_grid(*s.gt);
      for (auto & v : g.labels) {
        if (v == g.ignore_value || u01(gen) < spec.noise) {
          v = static_cast<std::uint32_t>(u01(gen) * 2.999);
        }
      }
      fs::create_directories(pred_dir);
      const auto p = pred_dir / (id + ".rbg");
      io::write_grid(g, p);
      text += nlohmann::json{{"sample", id}, {"path", p.string()}}.dump() + "\n";
    } else {
      auto d = io::read_depth(*s.gt);
      for (auto & v : d.values) {
        v = static_cast<float>((v > 0 ? v : 10.f) * std::exp(spec.noise * n01(gen)));
      }
      fs::create_directories(pred_dir);
      const auto p = pred_dir / (id + ".rbg");
      io::write_depth_grid(d, p);
      text += nlohmann::json{{"sample", id}, {"path", p.string()}}.dump() + "\n";
    }
  }
  return text;
}

}  // namespace robobench::fixtures
