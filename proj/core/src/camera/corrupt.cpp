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

#include "common.hpp"

namespace robobench::camera
{

Image corrupt_image(
  const Image & img, CorruptionType c, Severity s, DerivedSeed seed, const ParamsTable & params)
{
  if (!is_camera(c)) {
    throw ValidationError(
      "corrupt_image expects a camera corruption, got " + std::string(format_corruption(c)));
  }
  if (img.empty()) {
    throw ValidationError("cannot corrupt a zero-sized image");
  }
  if (s.is_identity()) {
    return img;
  }
  const auto & p = params.record(c, s);
  switch (c) {
    case CorruptionType::brightness:
    case CorruptionType::low_light:
    case CorruptionType::contrast:
      return apply_lighting(img, c, p, seed);
    case CorruptionType::gaussian_noise:
    case CorruptionType::shot_noise:
    case CorruptionType::impulse_noise:
    case CorruptionType::iso_noise:
      return apply_noise(img, c, p, seed);
    case CorruptionType::defocus_blur:
    case CorruptionType::glass_blur:
    case CorruptionType::motion_blur:
    case CorruptionType::zoom_blur:
      return apply_blur(img, c, p, seed);
    case CorruptionType::fog:
    case CorruptionType::frost:
    case CorruptionType::snow:
      return apply_weather(img, c, p, seed);
    case CorruptionType::pixelate:
    case CorruptionType::jpeg_compression:
    case CorruptionType::elastic_transform:
    case CorruptionType::quantization:
      return apply_digital(img, c, p, seed);
    default:
      break;
  }
  throw ValidationError("unhandled corruption " + std::string(format_corruption(c)));
}

}  // namespace robobench::camera
