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

#include <cmath>

#include "common.hpp"

namespace robobench::camera
{
using detail::param;

namespace
{

Image shot_noise(const Image & img, double photons, DerivedSeed seed)
{
  CounterRng rng(seed, detail::kStreamPrimary);
  FloatImage f = to_float(img);
  for (auto & v : f.data) {
    v = static_cast<float>(static_cast<double>(rng.poisson(v * photons)) / photons);
  }
  return to_u8(f);
}

Image iso_noise(const Image & img, double gain, double read, DerivedSeed seed)
{
  CounterRng shot(seed, detail::kStreamPrimary);
  CounterRng readout(seed, detail::kStreamSecondary);
  FloatImage f = to_float(img);
  for (auto & v : f.data) {
    const double signal_sd = std::sqrt(gain * v);
    v = static_cast<float>(v + signal_sd * shot.normal() + read * readout.normal());
  }
  return to_u8(f);
}

}  // namespace

Image gaussian_noise(const Image & img, double sigma, DerivedSeed seed)
{
  CounterRng rng(seed, detail::kStreamPrimary);
  FloatImage f = to_float(img);
  for (auto & v : f.data) {
    v = static_cast<float>(v + sigma * rng.normal());
  }
  return to_u8(f);
}

Image impulse_noise(const Image & img, double amount, DerivedSeed seed)
{
  CounterRng hit(seed, detail::kStreamPrimary);
  CounterRng polarity(seed, detail::kStreamSecondary);
  Image out = img;
  auto data = out.data();
  for (std::size_t px = 0; px < out.num_pixels(); ++px) {
    if (!hit.bernoulli(amount)) {
      continue;
    }
    const std::uint8_t v = polarity.bernoulli(0.5) ? 255 : 0;
    for (int c = 0; c < 3; ++c) {
      data[px * 3 + c] = v;
    }
  }
  return out;
}

Image apply_noise(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed)
{
  switch (variant) {
    case CorruptionType::gaussian_noise:
      return gaussian_noise(img, param(p, "sigma"), seed);
    case CorruptionType::shot_noise:
      return shot_noise(img, param(p, "photons"), seed);
    case CorruptionType::impulse_noise:
      return impulse_noise(img, param(p, "amount"), seed);
    case CorruptionType::iso_noise:
      return iso_noise(img, param(p, "gain"), param(p, "read"), seed);
    default:
      detail::wrong_family(variant, "noise");
  }
}

}  // namespace robobench::camera
