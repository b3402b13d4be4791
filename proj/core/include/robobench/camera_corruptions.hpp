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

#include "robobench/core.hpp"
#include "robobench/image.hpp"
#include "robobench/params.hpp"

namespace robobench::camera
{

/// Applies one of the 18 camera corruptions at the given severity.
///
/// Severity 0 returns a bit-identical copy. Otherwise the parameters come from
/// `params.record(c, s)` and every random draw comes from a CounterRng keyed
/// by `seed`, so equal inputs give bit-identical outputs. Output dimensions
/// always match the input.
///
/// Throws ValidationError for LiDAR/clean tags and zero-sized images.
Image corrupt_image(
  const Image & img, CorruptionType c, Severity s, DerivedSeed seed,
  const ParamsTable & params = ParamsTable::canonical());

// Family entry points. Each takes one severity record of the params table
// and rejects tags outside its family.

/// brightness: luma offset; low_light: luma scaling plus signal-dependent
/// noise; contrast: per-channel deviation from the image mean scaled down.
Image apply_lighting(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed);

/// gaussian_noise, shot_noise (Poisson photons), impulse_noise (per-pixel
/// salt and pepper), iso_noise (signal-dependent plus read noise).
Image apply_noise(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed);

/// defocus_blur (disk kernel), glass_blur (blur, local pixel swaps, blur),
/// motion_blur (line kernel along a seeded direction), zoom_blur (average of
/// centre-scaled copies).
Image apply_blur(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed);

/// fog (plasma haze blended towards white), frost (procedural ice texture),
/// snow (streak particles plus whitening).
Image apply_weather(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed);

/// pixelate (block average, nearest upsample), jpeg_compression,
/// elastic_transform (smoothed seeded displacement), quantization (posterize).
Image apply_digital(
  const Image & img, CorruptionType variant, const ParamsTable::Record & p, DerivedSeed seed);

// Parameterized primitives used by the family functions. All are identities
// at their neutral parameter (noted per function).

Image posterize(const Image & img, int bits);                 // bits >= 8
Image pixelate(const Image & img, int factor);                // factor == 1
Image impulse_noise(const Image & img, double amount, DerivedSeed seed);  // amount == 0
Image motion_blur(const Image & img, int length, DerivedSeed seed);      // length == 1
Image fog(const Image & img, double weight, double decay, DerivedSeed seed);  // weight == 0
Image gaussian_noise(const Image & img, double sigma, DerivedSeed seed);
Image contrast(const Image & img, double reduction);          // reduction == 0
Image defocus_blur(const Image & img, int radius);            // radius == 0
Image jpeg_roundtrip(const Image & img, int quality);

}  // namespace robobench::camera
