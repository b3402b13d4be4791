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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "common.hpp"

namespace robobench::camera
{
using detail::int_param;
using detail::param;

namespace
{

Image glass_blur(const Image & img, double sigma, int delta, int iterations, DerivedSeed seed)
{
  CounterRng rng(seed, detail::kStreamPrimary);
  FloatImage f = gaussian_blur(to_float(img), sigma);
  const int w = f.width;
  const int h = f.height;
  // Swap each interior pixel with a random neighbour inside [-delta, delta),
  // sweeping bottom-right to top-left.
  for (int it = 0; it < iterations; ++it) {
    for (int y = h - 1 - delta; y > delta; --y) {
      for (int x = w - 1 - delta; x > delta; --x) {
        const int dx = static_cast<int>(rng.below(2 * delta)) - delta;
        const int dy = static_cast<int>(rng.below(2 * delta)) - delta;
        for (int c = 0; c < 3; ++c) {
          std::swap(f.at(x, y, c), f.at(x + dx, y + dy, c));
        }
      }
    }
  }
  return to_u8(gaussian_blur(f, sigma));
}

Image zoom_blur(const Image & img, double max_zoom, double step)
{
  const FloatImage src = to_float(img);
  FloatImage acc = src;
  const double cx = (src.width - 1) / 2.0;
  const double cy = (src.height - 1) / 2.0;
  int copies = 0;
  for (int i = 0; step > 0.0; ++i) {
    const double z = 1.0 + i * step;
    if (z >= max_zoom - 1e-9) {
      break;
    }
    ++copies;
    for (int y = 0; y < src.height; ++y) {
      for (int x = 0; x < src.width; ++x) {
        const double sx = cx + (x - cx) / z;
        const double sy = cy + (y - cy) / z;
        for (int c = 0; c < 3; ++c) {
          acc.at(x, y, c) += sample_bilinear(src, sx, sy, c);
        }
      }
    }
  }
  const float n = static_cast<float>(copies + 1);
  for (auto & v : acc.data) {
    v /= n;
  }
  return to_u8(acc);
}

}  // namespace

Image defocus_blur(const Image & img, int radius)
{
  if (radius <= 0) {
    return img;
  }
  return to_u8(convolve(to_float(img), disk_kernel(radius)));
}

Image motion_blur(const Image & img, int length, DerivedSeed seed)
{
  if (length <= 1) {
    return img;
  }
  CounterRng rng(seed, detail::kStreamDirection);
  const double angle = rng.uniform(-std::numbers::pi / 4, std::numbers::pi / 4);
  std::vector<std::pair<int, int>> offsets;
  for (int k = 0; k < length; ++k) {
    offsets.emplace_back(
      static_cast<int>(std::lround(k * std::cos(angle))),
      static_cast<int>(std::lround(k * std::sin(angle))));
  }
  const FloatImage src = to_float(img);
  FloatImage out(src.width, src.height);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (const auto & [ox, oy] : offsets) {
        const int sx = std::clamp(x - ox, 0, src.width - 1);
        const int sy = std::clamp(y - oy, 0, src.height - 1);
        for (int c = 0; c < 3; ++c) {
          acc[c] += src.at(sx, sy, c);
        }
      }
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = static_cast<float>(acc[c] / length);
      }
    }
  }
  return to_u8(out);
}

Image apply_blur(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed)
{
  switch (variant) {
    case CorruptionType::defocus_blur:
      return defocus_blur(img, int_param(p, "radius"));
    case CorruptionType::glass_blur:
      return glass_blur(
        img, param(p, "sigma"), std::max(1, int_param(p, "delta")), int_param(p, "iterations"),
        seed);
    case CorruptionType::motion_blur:
      return motion_blur(img, int_param(p, "length"), seed);
    case CorruptionType::zoom_blur:
      return zoom_blur(img, param(p, "max_zoom"), param(p, "step"));
    default:
      detail::wrong_family(variant, "blur");
  }
}

}  // namespace robobench::camera
