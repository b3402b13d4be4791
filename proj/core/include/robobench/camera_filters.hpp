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

// Float-domain building blocks shared by the camera corruptions. Exposed so
// tests can recompute a corruption from its definition.

#include <vector>

#include "robobench/image.hpp"
#include "robobench/rng.hpp"

namespace robobench::camera
{

/// Interleaved RGB, samples nominally in [0, 1].
struct FloatImage
{
  int width = 0;
  int height = 0;
  std::vector<float> data;

  FloatImage() = default;
  FloatImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0.f) {}

  float & at(int x, int y, int c) { return data[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
  float at(int x, int y, int c) const
  {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
};

/// Single-channel float field (plasma maps, displacement fields).
struct Plane
{
  int width = 0;
  int height = 0;
  std::vector<float> data;

  Plane() = default;
  Plane(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0.f) {}

  float & at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

struct Kernel2D
{
  int radius_x = 0;
  int radius_y = 0;
  std::vector<float> weights;  // (2*radius_y+1) rows of (2*radius_x+1)
};

FloatImage to_float(const Image & img);

/// Round half up and clamp to [0, 255]; NaN maps to 0.
Image to_u8(const FloatImage & img);
std::uint8_t quantize_sample(float v);

/// Rec. 601 luma of an RGB sample triple.
float luma(float r, float g, float b);

/// Normalized disk: cells with dx^2 + dy^2 <= r^2.
Kernel2D disk_kernel(int radius);

/// Sampled Gaussian, radius ceil(3 sigma), normalized to sum 1.
std::vector<float> gaussian_kernel_1d(double sigma);

/// 2-D convolution with clamp-to-edge borders.
FloatImage convolve(const FloatImage & img, const Kernel2D & kernel);

FloatImage gaussian_blur(const FloatImage & img, double sigma);
Plane gaussian_blur(const Plane & plane, double sigma);

/// Bilinear lookup; coordinates are clamped into the image first.
float sample_bilinear(const FloatImage & img, double x, double y, int c);

/// Toroidal diamond-square fractal on the smallest power-of-two square that
/// covers (width, height), cropped and normalized to [0, 1]. The random
/// perturbation amplitude starts at 1 and is divided by `decay` per octave.
Plane plasma_fractal(int width, int height, double decay, CounterRng & rng);

}  // namespace robobench::camera
