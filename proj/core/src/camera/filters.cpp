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

#include "robobench/camera_filters.hpp"

namespace robobench::camera
{

FloatImage to_float(const Image & img)
{
  FloatImage out(img.width(), img.height());
  const auto src = img.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    out.data[i] = static_cast<float>(src[i]) / 255.f;
  }
  return out;
}

std::uint8_t quantize_sample(float v)
{
  const float s = std::floor(v * 255.f + 0.5f);
  if (!(s > 0.f)) {
    return 0;
  }
  return s >= 255.f ? 255 : static_cast<std::uint8_t>(s);
}

Image to_u8(const FloatImage & img)
{
  std::vector<std::uint8_t> bytes(img.data.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = quantize_sample(img.data[i]);
  }
  return Image(img.width, img.height, std::move(bytes));
}

float luma(float r, float g, float b) { return 0.299f * r + 0.587f * g + 0.114f * b; }

Kernel2D disk_kernel(int radius)
{
  Kernel2D k;
  k.radius_x = k.radius_y = std::max(radius, 0);
  const int side = 2 * k.radius_x + 1;
  k.weights.assign(static_cast<std::size_t>(side) * side, 0.f);
  int count = 0;
  for (int dy = -k.radius_y; dy <= k.radius_y; ++dy) {
    for (int dx = -k.radius_x; dx <= k.radius_x; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) {
        k.weights[(dy + k.radius_y) * side + (dx + k.radius_x)] = 1.f;
        ++count;
      }
    }
  }
  for (auto & w : k.weights) {
    w /= static_cast<float>(count);
  }
  return k;
}

std::vector<float> gaussian_kernel_1d(double sigma)
{
  if (!(sigma > 0.0)) {
    return {1.f};
  }
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * r + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    w[i + r] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += w[i + r];
  }
  std::vector<float> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = static_cast<float>(w[i] / sum);
  }
  return out;
}

FloatImage convolve(const FloatImage & img, const Kernel2D & kernel)
{
  FloatImage out(img.width, img.height);
  const int side = 2 * kernel.radius_x + 1;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (int dy = -kernel.radius_y; dy <= kernel.radius_y; ++dy) {
        const int sy = std::clamp(y + dy, 0, img.height - 1);
        for (int dx = -kernel.radius_x; dx <= kernel.radius_x; ++dx) {
          const float w = kernel.weights[(dy + kernel.radius_y) * side + (dx + kernel.radius_x)];
          if (w == 0.f) {
            continue;
          }
          const int sx = std::clamp(x + dx, 0, img.width - 1);
          for (int c = 0; c < 3; ++c) {
            acc[c] += static_cast<double>(w) * img.at(sx, sy, c);
          }
        }
      }
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = static_cast<float>(acc[c]);
      }
    }
  }
  return out;
}

namespace
{
// Separable pass over `channels` interleaved samples, horizontal or vertical.
void blur_pass(
  const std::vector<float> & src, std::vector<float> & dst, int w, int h, int channels,
  const std::vector<float> & k, bool horizontal)
{
  const int r = static_cast<int>(k.size() / 2);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i) {
          const int sx = horizontal ? std::clamp(x + i, 0, w - 1) : x;
          const int sy = horizontal ? y : std::clamp(y + i, 0, h - 1);
          acc += static_cast<double>(k[i + r]) *
                 src[(static_cast<std::size_t>(sy) * w + sx) * channels + c];
        }
        dst[(static_cast<std::size_t>(y) * w + x) * channels + c] = static_cast<float>(acc);
      }
    }
  }
}
}  // namespace

FloatImage gaussian_blur(const FloatImage & img, double sigma)
{
  const auto k = gaussian_kernel_1d(sigma);
  FloatImage tmp(img.width, img.height);
  FloatImage out(img.width, img.height);
  blur_pass(img.data, tmp.data, img.width, img.height, 3, k, true);
  blur_pass(tmp.data, out.data, img.width, img.height, 3, k, false);
  return out;
}

Plane gaussian_blur(const Plane & plane, double sigma)
{
  const auto k = gaussian_kernel_1d(sigma);
  Plane tmp(plane.width, plane.height);
  Plane out(plane.width, plane.height);
  blur_pass(plane.data, tmp.data, plane.width, plane.height, 1, k, true);
  blur_pass(tmp.data, out.data, plane.width, plane.height, 1, k, false);
  return out;
}

float sample_bilinear(const FloatImage & img, double x, double y, int c)
{
  x = std::clamp(x, 0.0, static_cast<double>(img.width - 1));
  y = std::clamp(y, 0.0, static_cast<double>(img.height - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, img.width - 1);
  const int y1 = std::min(y0 + 1, img.height - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = (1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
  const double bottom = (1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
  return static_cast<float>((1.0 - fy) * top + fy * bottom);
}

Plane plasma_fractal(int width, int height, double decay, CounterRng & rng)
{
  int size = 2;
  while (size < width || size < height) {
    size *= 2;
  }
  std::vector<double> map(static_cast<std::size_t>(size) * size, 0.0);
  auto at = [&](int x, int y) -> double & {
    x = ((x % size) + size) % size;
    y = ((y % size) + size) % size;
    return map[static_cast<std::size_t>(y) * size + x];
  };

  double wibble = 1.0;
  for (int step = size; step >= 2; step /= 2) {
    const int half = step / 2;
    // Square step: centers from the four corners.
    for (int y = 0; y < size; y += step) {
      for (int x = 0; x < size; x += step) {
        const double mean =
          (at(x, y) + at(x + step, y) + at(x, y + step) + at(x + step, y + step)) / 4.0;
        at(x + half, y + half) = mean + wibble * rng.uniform(-1.0, 1.0);
      }
    }
    // Diamond step: edge midpoints from their four axis neighbours.
    for (int y = 0; y < size; y += step) {
      for (int x = 0; x < size; x += step) {
        for (const auto & [px, py] : {std::pair{x + half, y}, std::pair{x, y + half}}) {
          const double mean =
            (at(px - half, py) + at(px + half, py) + at(px, py - half) + at(px, py + half)) / 4.0;
          at(px, py) = mean + wibble * rng.uniform(-1.0, 1.0);
        }
      }
    }
    wibble /= decay;
  }

  Plane out(width, height);
  double lo = map[0];
  double hi = map[0];
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      lo = std::min(lo, at(x, y));
      hi = std::max(hi, at(x, y));
    }
  }
  const double range = hi - lo;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out.at(x, y) = range > 0.0 ? static_cast<float>((at(x, y) - lo) / range) : 0.f;
    }
  }
  return out;
}

}  // namespace robobench::camera
