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

#include <gtest/gtest.h>

#include "dataset.hpp"
#include "robobench/manifest.hpp"

using namespace robobench;

namespace
{

const char * kMinimal = R"({
  "schema_version": 1,
  "track": "bev_detection",
  "classes": ["car", "pedestrian"],
  "samples": [
    {"id": "a", "cameras": {"CAM_FRONT": "a.png"}, "gt": "a.jsonl", "corruption": "clean", "severity": 0},
    {"id": "b", "cameras": {"CAM_FRONT": "b.png", "CAM_BACK": "/abs/b.png"}, "corruption": "fog", "severity": 3}
  ]
})";

std::string error_of(const std::string & text)
{
  try {
    parse_manifest(text, "/data", {.check_files = false});
  } catch (const ValidationError & e) {
    return e.what();
  }
  return "";
}

std::string with_sample(const std::string & sample)
{
  return R"({"schema_version": 1, "track": "bev_detection", "classes": ["car"], "samples": [)" +
         std::string(R"({"id": "ok", "cameras": {"C": "x.png"}, "corruption": "clean", "severity": 0}, )") +
         sample + "]}";
}

}  // namespace

TEST(Manifest, ParsesAndResolvesPaths)
{
  const auto m = parse_manifest(kMinimal, "/data", {.check_files = false});
  EXPECT_EQ(m.track, Track::bev_detection);
  ASSERT_EQ(m.samples.size(), 2u);
  EXPECT_EQ(m.samples[0].cameras.at("CAM_FRONT"), fs::path("/data/a.png"));
  EXPECT_EQ(*m.samples[0].gt, fs::path("/data/a.jsonl"));
  EXPECT_EQ(m.samples[1].cameras.at("CAM_BACK"), fs::path("/abs/b.png"));
  EXPECT_EQ(m.samples[1].corruption, CorruptionType::fog);
  EXPECT_EQ(m.samples[1].severity.level(), 3);
  EXPECT_TRUE(m.contains(SampleId("b")));
  EXPECT_FALSE(m.contains(SampleId("c")));
}

TEST(Manifest, SerializeRoundTrip)
{
  const auto m = parse_manifest(kMinimal, "/data", {.check_files = false});
  const auto again = parse_manifest(serialize_manifest(m, "/data"), "/data", {.check_files = false});
  ASSERT_EQ(again.samples.size(), m.samples.size());
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    EXPECT_EQ(again.samples[i].cameras, m.samples[i].cameras);
    EXPECT_EQ(again.samples[i].gt, m.samples[i].gt);
    EXPECT_EQ(again.samples[i].corruption, m.samples[i].corruption);
  }
}

TEST(Manifest, DiagnosticsNameTheField)
{
  EXPECT_NE(error_of(with_sample(R"({"id": "x", "cameras": {"C": "x.png"}, "corruption": "fog", "severity": 7})"))
              .find("manifest.samples[1].severity"),
            std::string::npos);
  EXPECT_NE(error_of(with_sample(R"({"id": "x", "cameras": {"C": "x.png"}, "corruption": "smog", "severity": 1})"))
              .find("manifest.samples[1].corruption"),
            std::string::npos);
  EXPECT_NE(error_of(with_sample(R"({"id": "ok", "cameras": {"C": "x.png"}, "corruption": "fog", "severity": 1})"))
              .find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of(with_sample(R"({"id": "x", "cameras": {"C": "x.png"}, "corruption": "clean", "severity": 2})"))
              .find("severity 0"),
            std::string::npos);
  EXPECT_NE(error_of(with_sample(R"({"id": "x", "cameras": {}, "corruption": "fog", "severity": 1})"))
              .find("cameras"),
            std::string::npos);
  EXPECT_NE(error_of(with_sample(R"({"id": "x", "cameras": {"C": "x.png"}, "corruption": "fog", "severity": 1, "extra": 1})"))
              .find("unknown field 'extra'"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version": 2, "track": "depth", "samples": []})").find("schema_version"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version": 1, "track": "driving", "samples": []})").find("manifest.track"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version": 1, "track": "occupancy", "samples": []})").find("classes"),
            std::string::npos);
  EXPECT_NE(error_of("{\"schema_version\": 1,\n \"track\": }").find("line 2"), std::string::npos);
}

TEST(Manifest, ModalityMismatch)
{
  const auto err = error_of(with_sample(
    R"({"id": "x", "cameras": {"C": "x.png"}, "lidar": "x.bin", "corruption": "lidar_points_drop", "severity": 1})"));
  EXPECT_NE(err.find("modality mismatch"), std::string::npos) << err;
}

TEST(Manifest, MissingFilesAreReported)
{
  fixtures::TempDir dir;
  try {
    parse_manifest(kMinimal, dir.path());
    FAIL();
  } catch (const ValidationError & e) {
    EXPECT_NE(std::string(e.what()).find("manifest.samples[0].cameras.CAM_FRONT"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_manifest(dir.path() / "nope.json"), IoError);
}

TEST(Manifest, TrackNames)
{
  for (Track t : {Track::bev_detection, Track::map_segmentation, Track::occupancy, Track::depth,
                  Track::multimodal_detection}) {
    EXPECT_EQ(parse_track(format_track(t)), t);
  }
  EXPECT_THROW(parse_track("bev"), ValidationError);
}

TEST(GroundTruthBoxes, ParseAndDiagnostics)
{
  const SampleId s("s1");
  const auto boxes = parse_gt_boxes(
    R"({"translation": [1, 2, 3], "size": [1, 2, 1], "yaw": 0.5, "velocity": [0, 1], "class_name": "car", "attribute": null}
{"sample": "s1", "translation": [0, 0, 0], "size": [1, 1, 1], "yaw": 0, "velocity": [0, 0], "class_name": "car", "attribute": "moving"}
)",
    s);
  ASSERT_EQ(boxes.size(), 2u);
  EXPECT_FALSE(boxes[0].attribute.has_value());
  EXPECT_EQ(*boxes[1].attribute, "moving");
  EXPECT_EQ(boxes[1].sample, s);

  try {
    parse_gt_boxes(
      "{\"translation\": [1, 2, 3], \"size\": [1, 2, 1], \"yaw\": 0, \"velocity\": [0, 0], \"class_name\": \"car\"}\n"
      "{\"translation\": [1, 2], \"size\": [1, 2, 1], \"yaw\": 0, \"velocity\": [0, 0], \"class_name\": \"car\"}\n",
      s);
    FAIL();
  } catch (const ValidationError & e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("record 1 (line 2)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("translation"), std::string::npos) << msg;
  }
  EXPECT_THROW(
    parse_gt_boxes(
      R"({"sample": "other", "translation": [0, 0, 0], "size": [1, 1, 1], "yaw": 0, "velocity": [0, 0], "class_name": "car"})", s),
    ValidationError);
  EXPECT_THROW(
    parse_gt_boxes(
      R"({"translation": [0, 0, 0], "size": [0, 1, 1], "yaw": 0, "velocity": [0, 0], "class_name": "car"})", s),
    ValidationError);
}

TEST(Manifest, GeneratedDatasetsLoad)
{
  for (Track t : {Track::bev_detection, Track::map_segmentation, Track::occupancy, Track::depth,
                  Track::multimodal_detection}) {
    fixtures::TempDir dir;
    fixtures::DatasetOptions opts;
    opts.track = t;
    opts.samples_per_group = 1;
    const auto ds = fixtures::write_dataset(dir.path(), opts);
    EXPECT_EQ(ds.manifest.samples.size(), track_rows(t).size() + 1) << format_track(t);
  }
}
