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

#include "robobench/image.hpp"

#include <string>

#include "robobench/error.hpp"

namespace robobench
{

Image::Image(int width, int height)
: width_(width), height_(height)
{
  if (width < 0 || height < 0) {
    throw ValidationError("image dimensions must be non-negative");
  }
  data_.assign(num_pixels() * kChannels, 0);
}

Image::Image(int width, int height, std::vector<std::uint8_t> data)
: width_(width), height_(height), data_(std::move(data))
{
  if (width < 0 || height < 0) {
    throw ValidationError("image dimensions must be non-negative");
  }
  if (data_.size() != num_pixels() * kChannels) {
    throw ValidationError(
      "image data length " + std::to_string(data_.size()) + " does not match " +
      std::to_string(width) + "x" + std::to_string(height) + "x3");
  }
}

}  // namespace robobench
