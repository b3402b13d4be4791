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

#include <cmath>
#include <string>
#include <string_view>

#include "robobench/camera_corruptions.hpp"
#include "robobench/camera_filters.hpp"

namespace robobench::camera::detail
{

inline double param(const ParamsTable::Record & p, std::string_view key)
{
  const auto it = p.find(key);
  if (it == p.end()) {
    throw ValidationError("missing corruption parameter '" + std::string(key) + "'");
  }
  return it->second;
}

inline int int_param(const ParamsTable::Record & p, std::string_view key)
{
  return static_cast<int>(std::lround(param(p, key)));
}

[[noreturn]] inline void wrong_family(CorruptionType c, std::string_view family)
{
  throw ValidationError(
    std::string(format_corruption(c)) + " is not a " + std::string(family) + " corruption");
}

// Independent RNG streams inside one corruption.
enum Stream : std::uint64_t {
  kStreamPrimary = 0,
  kStreamSecondary = 1,
  kStreamTexture = 2,
  kStreamDirection = 3,
};

}  // namespace robobench::camera::detail
