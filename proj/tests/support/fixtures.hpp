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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "robobench/image.hpp"
#include "robobench/lidar_failures.hpp"

namespace robobench::fixtures
{

/// Synthetic "street scene": sky gradient, ground plane, a few boxes and a
/// mild texture, so blur, noise and weather all have something to act on.
inline Image scene_image(int width, int height, std::uint32_t seed)
{
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> coord_x(0, width - 1);
  std::uniform_int_distribution<int> coord_y(height / 3, height - 1);
  std::uniform_int_distribution<int> colour(20, 235);
  std::normal_distribution<double> texture(0.0, 6.0);
  Image img(width, height);
  const int horizon = height / 2;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double r, g, b;
      if (y < horizon) {
        const double t = static_cast<double>(y) / horizon;
        r = 90 + 80 * t;
        g = 140 + 60 * t;
        b = 220 - 20 * t;
      } else {
        const double t = static_cast<double>(y - horizon) / (height - horizon);
        r = g = b = 70 + 50 * t + 15 * std::sin(x * 0.3);
      }
      const double n = texture(gen);
      img.at(x, y, 0) = static_cast<std::uint8_t>(std::clamp(r + n, 0.0, 255.0));
      img.at(x, y, 1) = static_cast<std::uint8_t>(std::clamp(g + n, 0.0, 255.0));
      img.at(x, y, 2) = static_cast<std::uint8_t>(std::clamp(b + n, 0.0, 255.0));
    }
  }
  for (int k = 0; k < 24; ++k) {
    const int x0 = coord_x(gen), y0 = coord_y(gen);
    const int w = 3 + coord_x(gen) % std::max(1, width / 6), h = 3 + coord_y(gen) % std::max(1, height / 5);
    const int cr = colour(gen), cg = colour(gen), cb = colour(gen);
    for (int y = y0; y < std::min(height, y0 + h); ++y) {
      for (int x = x0; x < std::min(width, x0 + w); ++x) {
        img.at(x, y, 0) = static_cast<std::uint8_t>(cr);
        img.at(x, y, 1) = static_cast<std::uint8_t>(cg);
        img.at(x, y, 2) = static_cast<std::uint8_t>(cb);
      }
    }
  }
  return img;
}

inline std::vector<Image> image_fixture(std::size_t n = 10, int width = 160, int height = 90)
{
  std::vector<Image> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(scene_image(width, height, static_cast<std::uint32_t>(1000 + i)));
  }
  return out;
}

/// Spinning-LiDAR-like cloud: `beams` rings at distinct elevations, points at
/// random azimuths and ranges.
inline lidar::PointCloud lidar_cloud(std::size_t n, int beams, std::uint32_t seed, bool with_rings = true)
{
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> az(0.0, 2 * M_PI);
  std::uniform_real_distribution<double> range(2.0, 60.0);
  std::uniform_int_distribution<int> ring(0, beams - 1);
  std::uniform_real_distribution<float> intensity(0.f, 255.f);
  lidar::PointCloud pc;
  for (std::size_t i = 0; i < n; ++i) {
    const int r = ring(gen);
    const double elev = (-25.0 + 40.0 * r / std::max(1, beams - 1)) * M_PI / 180.0;
    const double d = range(gen), a = az(gen);
    lidar::Point p;
    p.x = static_cast<float>(d * std::cos(elev) * std::cos(a));
    p.y = static_cast<float>(d * std::cos(elev) * std::sin(a));
    p.z = static_cast<float>(d * std::sin(elev));
    p.intensity = intensity(gen);
    p.ring = with_rings ? r : lidar::kNoRing;
    pc.points.push_back(p);
  }
  return pc;
}

/// Scratch directory removed on destruction.
class TempDir
{
public:
  TempDir()
  {
    std::string tmpl = (std::filesystem::temp_directory_path() / "robobench-XXXXXX").string();
    path_ = mkdtemp(tmpl.data());
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;
  const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
};

}  // namespace robobench::fixtures
