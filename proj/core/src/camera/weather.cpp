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

#include "common.hpp"

namespace robobench::camera
{
using detail::int_param;
using detail::param;

namespace
{

// Ice texture in [0, 1]: rough plasma plus seeded crystal needles.
Plane frost_texture(int w, int h, DerivedSeed seed)
{
  CounterRng rng(seed, detail::kStreamTexture);
  Plane base = plasma_fractal(w, h, 1.3, rng);
  Plane needles(w, h);
  const int count = std::max(1, (w * h) / 400);
  for (int n = 0; n < count; ++n) {
    const double x0 = rng.uniform(0.0, w);
    const double y0 = rng.uniform(0.0, h);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const int len = 4 + static_cast<int>(rng.below(13));
    for (int k = 0; k < len; ++k) {
      const int x = static_cast<int>(std::floor(x0 + k * std::cos(angle)));
      const int y = static_cast<int>(std::floor(y0 + k * std::sin(angle)));
      if (x < 0 || y < 0 || x >= w || y >= h) {
        break;
      }
      const float v = 1.f - 0.04f * static_cast<float>(k);
      needles.at(x, y) = std::max(needles.at(x, y), v);
    }
  }
  Plane out(w, h);
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = std::min(1.f, 0.65f * base.data[i] + 0.6f * needles.data[i]);
  }
  return out;
}

Image frost(const Image & img, double weight, DerivedSeed seed)
{
  FloatImage f = to_float(img);
  const Plane tex = frost_texture(f.width, f.height, seed);
  constexpr float kTint[3] = {0.86f, 0.93f, 1.0f};
  const float keep = static_cast<float>(1.0 - weight);
  const float coat = static_cast<float>(weight);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      const float t = 0.35f + 0.65f * tex.at(x, y);
      for (int c = 0; c < 3; ++c) {
        f.at(x, y, c) = keep * f.at(x, y, c) + coat * kTint[c] * t;
      }
    }
  }
  return to_u8(f);
}

Image snow(const Image & img, double density, int length, double whiten, DerivedSeed seed)
{
  const int w = img.width();
  const int h = img.height();
  CounterRng flakes_rng(seed, detail::kStreamPrimary);
  CounterRng dir_rng(seed, detail::kStreamDirection);

  Plane flakes(w, h);
  for (auto & v : flakes.data) {
    if (flakes_rng.bernoulli(density)) {
      v = static_cast<float>(flakes_rng.uniform(0.6, 1.0));
    }
  }
  // Falling direction within 45 degrees of straight down.
  const double angle = std::numbers::pi / 2 + dir_rng.uniform(-std::numbers::pi / 4, std::numbers::pi / 4);
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  Plane streaks(w, h);
  const int len = std::max(1, length);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      float best = 0.f;
      for (int k = 0; k < len; ++k) {
        const int sx = static_cast<int>(std::lround(x - k * ux));
        const int sy = static_cast<int>(std::lround(y - k * uy));
        if (sx < 0 || sy < 0 || sx >= w || sy >= h) {
          break;
        }
        const float fade = 1.f - 0.5f * static_cast<float>(k) / static_cast<float>(len);
        best = std::max(best, flakes.at(sx, sy) * fade);
      }
      streaks.at(x, y) = best;
    }
  }

  FloatImage f = to_float(img);
  const float wh = static_cast<float>(whiten);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float lum = luma(f.at(x, y, 0), f.at(x, y, 1), f.at(x, y, 2));
      const float target = lum * 1.5f + 0.5f;
      for (int c = 0; c < 3; ++c) {
        const float v = f.at(x, y, c);
        f.at(x, y, c) = (1.f - wh) * v + wh * std::max(v, target) + streaks.at(x, y);
      }
    }
  }
  return to_u8(f);
}

}  // namespace

Image fog(const Image & img, double weight, double decay, DerivedSeed seed)
{
  if (weight <= 0.0) {
    return img;
  }
  if (!(decay > 0.0)) {
    throw ValidationError("fog decay must be positive");
  }
  CounterRng rng(seed, detail::kStreamTexture);
  const Plane haze = plasma_fractal(img.width(), img.height(), decay, rng);
  FloatImage f = to_float(img);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      const float a = static_cast<float>(weight) * haze.at(x, y);
      for (int c = 0; c < 3; ++c) {
        float & v = f.at(x, y, c);
        v = v + a * (1.f - v);
      }
    }
  }
  return to_u8(f);
}

Image apply_weather(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed)
{
  switch (variant) {
    case CorruptionType::fog:
      return fog(img, param(p, "weight"), param(p, "decay"), seed);
    case CorruptionType::frost:
      return frost(img, param(p, "weight"), seed);
    case CorruptionType::snow:
      return snow(img, param(p, "density"), int_param(p, "length"), param(p, "whiten"), seed);
    default:
      detail::wrong_family(variant, "weather");
  }
}

}  // namespace robobench::camera
