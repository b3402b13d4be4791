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

#include "common.hpp"
#include "robobench/io.hpp"

namespace robobench::camera
{
using detail::int_param;
using detail::param;

namespace
{

Image elastic_transform(const Image & img, double alpha, double sigma, DerivedSeed seed)
{
  const int w = img.width();
  const int h = img.height();
  CounterRng rx(seed, detail::kStreamPrimary);
  CounterRng ry(seed, detail::kStreamSecondary);
  Plane dx(w, h);
  Plane dy(w, h);
  for (auto & v : dx.data) {
    v = static_cast<float>(rx.uniform(-1.0, 1.0));
  }
  for (auto & v : dy.data) {
    v = static_cast<float>(ry.uniform(-1.0, 1.0));
  }
  dx = gaussian_blur(dx, sigma);
  dy = gaussian_blur(dy, sigma);
  // Normalize so the largest displacement is exactly alpha pixels.
  float peak = 0.f;
  for (std::size_t i = 0; i < dx.data.size(); ++i) {
    peak = std::max({peak, std::abs(dx.data[i]), std::abs(dy.data[i])});
  }
  const double scale = peak > 0.f ? alpha / peak : 0.0;

  const FloatImage src = to_float(img);
  FloatImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // sample_bilinear clamps, so lookups never leave the image.
      const double sx = x + scale * dx.at(x, y);
      const double sy = y + scale * dy.at(x, y);
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = sample_bilinear(src, sx, sy, c);
      }
    }
  }
  return to_u8(out);
}

}  // namespace

Image posterize(const Image & img, int bits)
{
  if (bits >= 8) {
    return img;
  }
  if (bits < 1) {
    throw ValidationError("quantization bits must be in [1, 8]");
  }
  const int top = (1 << bits) - 1;
  Image out = img;
  for (auto & v : out.data()) {
    const int level = (v * top + 127) / 255;
    v = static_cast<std::uint8_t>((level * 255 + top / 2) / top);
  }
  return out;
}

Image pixelate(const Image & img, int factor)
{
  if (factor <= 1) {
    return img;
  }
  Image out(img.width(), img.height());
  for (int by = 0; by < img.height(); by += factor) {
    for (int bx = 0; bx < img.width(); bx += factor) {
      const int ey = std::min(by + factor, img.height());
      const int ex = std::min(bx + factor, img.width());
      const int count = (ey - by) * (ex - bx);
      for (int c = 0; c < 3; ++c) {
        int sum = 0;
        for (int y = by; y < ey; ++y) {
          for (int x = bx; x < ex; ++x) {
            sum += img.at(x, y, c);
          }
        }
        const auto avg = static_cast<std::uint8_t>((sum + count / 2) / count);
        for (int y = by; y < ey; ++y) {
          for (int x = bx; x < ex; ++x) {
            out.at(x, y, c) = avg;
          }
        }
      }
    }
  }
  return out;
}

Image jpeg_roundtrip(const Image & img, int quality)
{
  return io::decode_jpeg(io::encode_jpeg(img, std::clamp(quality, 1, 100)));
}

Image apply_digital(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed)
{
  switch (variant) {
    case CorruptionType::pixelate:
      return pixelate(img, int_param(p, "factor"));
    case CorruptionType::jpeg_compression:
      return jpeg_roundtrip(img, int_param(p, "quality"));
    case CorruptionType::elastic_transform:
      return elastic_transform(img, param(p, "alpha"), param(p, "sigma"), seed);
    case CorruptionType::quantization:
      return posterize(img, int_param(p, "bits"));
    default:
      detail::wrong_family(variant, "digital");
  }
}

}  // namespace robobench::camera
