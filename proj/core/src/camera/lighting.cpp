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

namespace robobench::camera
{
using detail::param;

namespace
{

Image brightness(const Image & img, double offset)
{
  FloatImage f = to_float(img);
  for (std::size_t i = 0; i < f.data.size(); i += 3) {
    const float y = luma(f.data[i], f.data[i + 1], f.data[i + 2]);
    const float shifted = std::min(1.f, y + static_cast<float>(offset));
    const float delta = shifted - y;
    for (int c = 0; c < 3; ++c) {
      f.data[i + c] += delta;
    }
  }
  return to_u8(f);
}

Image low_light(const Image & img, double dim, double shot, double read, DerivedSeed seed)
{
  CounterRng rng(seed, detail::kStreamPrimary);
  FloatImage f = to_float(img);
  const double gain = 1.0 - dim;
  for (auto & v : f.data) {
    const double scaled = v * gain;
    const double sd = std::sqrt(shot * scaled + read * read);
    v = static_cast<float>(scaled + sd * rng.normal());
  }
  return to_u8(f);
}

}  // namespace

Image contrast(const Image & img, double reduction)
{
  FloatImage f = to_float(img);
  double mean[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    mean[i % 3] += f.data[i];
  }
  const double n = static_cast<double>(img.num_pixels());
  for (auto & m : mean) {
    m /= n;
  }
  const double keep = 1.0 - reduction;
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    const double m = mean[i % 3];
    f.data[i] = static_cast<float>(m + (f.data[i] - m) * keep);
  }
  return to_u8(f);
}

Image apply_lighting(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed)
{
  switch (variant) {
    case CorruptionType::brightness:
      return brightness(img, param(p, "offset"));
    case CorruptionType::low_light:
      return low_light(img, param(p, "dim"), param(p, "shot"), param(p, "read"), seed);
    case CorruptionType::contrast:
      return contrast(img, param(p, "reduction"));
    default:
      detail::wrong_family(variant, "lighting");
  }
}

}  // namespace robobench::camera
