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

#include <functional>
#include <string>
#include <vector>

#include "robobench/params.hpp"

namespace robobench
{

/// A named computation with its pinned result.
struct GoldenVector
{
  std::string name;
  std::string expected;
  std::function<std::string()> compute;
};

/// Seed derivation, RNG streams, every corruption, LiDAR failures, metric
/// oracles and codec round-trips on small fixed inputs.
std::vector<GoldenVector> embedded_golden_vectors();

struct SelftestInputs
{
  /// Table whose hash must match the pinned canonical hash; nullptr skips.
  const ParamsTable * params = nullptr;
  std::vector<GoldenVector> vectors = embedded_golden_vectors();
};

struct SelftestCheck
{
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport
{
  std::vector<SelftestCheck> checks;
  bool passed() const;
};

SelftestReport run_selftest(const SelftestInputs & inputs);

}  // namespace robobench
