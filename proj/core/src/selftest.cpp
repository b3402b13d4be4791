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

#include "robobench/selftest.hpp"

#include <cmath>
#include <charconv>

#include "robobench/camera_corruptions.hpp"
#include "robobench/depth_metrics.hpp"
#include "robobench/detection_metrics.hpp"
#include "robobench/grid_metrics.hpp"
#include "robobench/io.hpp"
#include "robobench/lidar_failures.hpp"
#include "robobench/rng.hpp"

namespace robobench
{

namespace
{

// Shortest representation that round-trips.
std::string fmt(double v)
{
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string digest(std::span<const std::uint8_t> bytes)
{
  return hex64(fnv1a64({reinterpret_cast<const char *>(bytes.data()), bytes.size()}));
}

Image test_image()
{
  Image img(24, 16);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      img.at(x, y, 0) = static_cast<std::uint8_t>(x * 10);
      img.at(x, y, 1) = static_cast<std::uint8_t>(y * 15);
      img.at(x, y, 2) = static_cast<std::uint8_t>((x * y * 7) % 256);
    }
  }
  return img;
}

lidar::PointCloud test_cloud()
{
  lidar::PointCloud pc;
  for (int i = 0; i < 64; ++i) {
    const float a = static_cast<float>(i) * 0.39f;
    pc.points.push_back({10.f * std::cos(a), 10.f * std::sin(a), static_cast<float>(i % 8) - 4.f,
                         static_cast<float>(i), i % 32});
  }
  return pc;
}

std::string corruption_digest(CorruptionType c)
{
  const Severity s(3);
  const auto seed = derive_seed(7, SampleId("selftest"), c, s);
  return digest(camera::corrupt_image(test_image(), c, s, seed).data());
}

std::string lidar_digest(CorruptionType c)
{
  const Severity s(3);
  const auto seed = derive_seed(7, SampleId("selftest"), c, s);
  return digest(io::encode_pointcloud(lidar::apply_lidar_failure(test_cloud(), c, s, seed)));
}

}  // namespace

bool SelftestReport::passed() const
{
  if (checks.empty()) {
    return false;
  }
  for (const auto & c : checks) {
    if (!c.passed) {
      return false;
    }
  }
  return true;
}

std::vector<GoldenVector> embedded_golden_vectors()
{
  std::vector<GoldenVector> v;
  v.push_back({"seed.derive", "794c10426ad933bf", [] {
                 return hex64(derive_seed(42, SampleId("sample-0001"), CorruptionType::fog, Severity(3)).value);
               }});
  v.push_back({"rng.counter", "59bb5231777e5872ca056dcb17401a3706570a258a3563de", [] {
                 CounterRng rng(DerivedSeed{1}, 0);
                 std::string out;
                 for (int i = 0; i < 3; ++i) {
                   out += hex64(rng.next_u64());
                 }
                 return out;
               }});
  v.push_back({"params.canonical_text", hex64(ParamsTable::canonical_hash()), [] {
                 return hex64(fnv1a64(ParamsTable::canonical_text()));
               }});

  // Pinned per-corruption digests of a 24x16 gradient at severity 3.
  static const std::pair<CorruptionType, const char *> kCamera[] = {
    {CorruptionType::brightness, "3e118a19ad4c5f4f"},
    {CorruptionType::low_light, "c07c4fe76670502e"},
    {CorruptionType::fog, "1070043e59d8bed8"},
    {CorruptionType::frost, "5f0656d6c88046fc"},
    {CorruptionType::snow, "2fab220f2a1761a0"},
    {CorruptionType::contrast, "f5f646cd846dfc13"},
    {CorruptionType::defocus_blur, "1785726d1bb57572"},
    {CorruptionType::glass_blur, "e5605c6d6175bcd0"},
    {CorruptionType::motion_blur, "30b14c47fe50a7f4"},
    {CorruptionType::zoom_blur, "8df99c6f77330d2c"},
    {CorruptionType::elastic_transform, "bf47c48cc90b9f9c"},
    {CorruptionType::quantization, "7359ca539a3fa297"},
    {CorruptionType::gaussian_noise, "69bde63e2eadbbf7"},
    {CorruptionType::impulse_noise, "568aa86297f621cb"},
    {CorruptionType::shot_noise, "fcd2886faf8898c9"},
    {CorruptionType::iso_noise, "9ea41aa06825afc3"},
    {CorruptionType::pixelate, "cf7b77c1a12a7b25"},
    {CorruptionType::jpeg_compression, "f5217ac47312a88c"},
  };
  for (const auto & [c, expected] : kCamera) {
    v.push_back({"camera." + std::string(format_corruption(c)), expected,
                 [c = c] { return corruption_digest(c); }});
  }
  static const std::pair<CorruptionType, const char *> kLidar[] = {
    {CorruptionType::lidar_points_drop, "af928f0150f708d2"},
    {CorruptionType::lidar_angular_restrict, "48e6cb19801fa8cd"},
    {CorruptionType::lidar_beam_drop, "8839545a71938c7d"},
  };
  for (const auto & [c, expected] : kLidar) {
    v.push_back({"lidar." + std::string(format_corruption(c)), expected,
                 [c = c] { return lidar_digest(c); }});
  }

  v.push_back({"metric.nds_closed_form", "0.45", [] {
                 detection::TpErrors tp{0.5, 0.5, 0.5, 0.5, 0.5};
                 return fmt(detection::nds(0.4, tp));
               }});
  v.push_back({"metric.detection_perfect", "1.0000000000000004 1.0000000000000002", [] {
                 detection::GtBox g;
                 g.sample = SampleId("s");
                 g.size = {2.0, 4.0, 1.5};
                 g.class_name = "car";
                 g.attribute = "moving";
                 detection::DetBox p;
                 static_cast<detection::GtBox &>(p) = g;
                 p.score = 1.0;
                 detection::DetectionConfig cfg;
                 cfg.class_set = {"car"};
                 const auto r = detection::evaluate_detection(std::vector{p}, std::vector{g}, cfg);
                 return fmt(r.map) + " " + fmt(r.nds);
               }});
  v.push_back({"metric.iou", "0.5", [] {
                 // TP 5, FP 3, FN 2 for class 1.
                 grid::ConfusionMatrix cm(2);
                 cm.at(1, 1) = 5;
                 cm.at(0, 1) = 3;
                 cm.at(1, 0) = 2;
                 return fmt(*grid::iou_per_class(cm)[1]);
               }});
  v.push_back({"metric.depth_abs_rel", "0.1", [] {
                 io::DepthMap gt{2, 2, {10.f, 10.f, 10.f, 10.f}};
                 io::DepthMap pred{2, 2, {9.f, 9.f, 9.f, 9.f}};
                 return fmt(depth::evaluate_depth(pred, gt, {}).abs_rel);
               }});

  v.push_back({"codec.png_roundtrip", "ok", [] {
                 const Image img = test_image();
                 return io::decode_png(io::encode_png(img)) == img ? "ok" : "mismatch";
               }});
  v.push_back({"codec.pointcloud_roundtrip", "ok", [] {
                 const auto pc = test_cloud();
                 return io::decode_pointcloud(io::encode_pointcloud(pc)) == pc ? "ok" : "mismatch";
               }});
  v.push_back({"codec.grid_roundtrip", "ok", [] {
                 io::GridContainer g;
                 g.dtype = io::GridDType::u16;
                 g.dims = {3, 4, 5};
                 for (std::uint32_t i = 0; i < 60; ++i) {
                   g.labels.push_back(i * 997 % 65536);
                 }
                 return io::decode_grid(io::encode_grid(g)) == g ? "ok" : "mismatch";
               }});
  return v;
}

SelftestReport run_selftest(const SelftestInputs & inputs)
{
  SelftestReport report;
  if (inputs.params) {
    const auto & p = *inputs.params;
    const bool ok = p.hash() == ParamsTable::canonical_hash();
    report.checks.push_back(
      {"params.hash", ok,
       ok ? "params table " + p.source() + " matches the pinned hash"
          : "params table " + p.source() + " hash " + hex64(p.hash()) + " != pinned " +
              hex64(ParamsTable::canonical_hash())});
  }
  if (inputs.vectors.empty()) {
    report.checks.push_back({"golden.vectors", false, "no embedded golden vectors found"});
    return report;
  }
  for (const auto & gv : inputs.vectors) {
    SelftestCheck c{gv.name, false, ""};
    try {
      const std::string got = gv.compute ? gv.compute() : std::string("<no computation>");
      c.passed = got == gv.expected;
      c.detail = c.passed ? got : "expected " + gv.expected + ", got " + got;
    } catch (const std::exception & e) {
      c.detail = std::string("threw: ") + e.what();
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace robobench
