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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "robobench/core.hpp"

namespace robobench
{

/// Severity-to-parameter ladder for every corruption and LiDAR failure mode.
///
/// Text format, one record per (corruption, severity):
///
///     # comment
///     <tag> <severity 1..5> <key>=<value> [<key>=<value> ...]
///
/// Every non-clean tag must define severities 1..5 with exactly the keys its
/// transform reads, and the distortion-controlling key must be monotone in
/// severity (see control_key()). The table identity is fnv1a64 of the file
/// bytes; the canonical table is compiled in and its hash is pinned.
class ParamsTable
{
public:
  using Record = std::map<std::string, double, std::less<>>;

  /// The compiled-in canonical table.
  static const ParamsTable & canonical();
  static std::string_view canonical_text();
  /// Pinned fnv1a64 of canonical_text(); selftest checks this.
  static std::uint64_t canonical_hash();

  static ParamsTable parse(std::string_view text, std::string source);
  static ParamsTable load(const std::filesystem::path & path);

  const Record & record(CorruptionType c, Severity s) const;
  double get(CorruptionType c, Severity s, std::string_view key) const;

  std::uint64_t hash() const { return hash_; }
  const std::string & source() const { return source_; }

private:
  ParamsTable() = default;

  std::map<std::pair<CorruptionType, int>, Record> records_;
  std::uint64_t hash_ = 0;
  std::string source_;
};

/// Key whose value must be monotone in severity, and whether it increases
/// (true) or decreases (false) with severity.
std::pair<std::string_view, bool> control_key(CorruptionType c);

/// Resolution order: explicit path, then $ROBOBENCH_PARAMS, then canonical.
ParamsTable resolve_params(const std::optional<std::filesystem::path> & explicit_path);

}  // namespace robobench
