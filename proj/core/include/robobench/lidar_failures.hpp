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
#include <set>
#include <vector>

#include "robobench/core.hpp"
#include "robobench/params.hpp"

namespace robobench::lidar
{

inline constexpr std::int32_t kNoRing = -1;

struct Point
{
  float x = 0.f;  // metres, +x is ego forward
  float y = 0.f;  // metres, +y is ego left
  float z = 0.f;
  float intensity = 0.f;
  std::int32_t ring = kNoRing;

  friend bool operator==(const Point &, const Point &) = default;
};

struct PointCloud
{
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  /// True when every point carries a ring index (vacuously true when empty).
  bool has_rings() const;

  friend bool operator==(const PointCloud &, const PointCloud &) = default;
};

/// Horizontal field of view kept by restrict_angular. Degrees, counter-
/// clockwise from +x.
struct AngularWindow
{
  double center_deg = 0.0;  // [0, 360)
  double width_deg = 360.0;  // (0, 360]

  void validate() const;
};

/// atan2(y, x) in degrees mapped to [0, 360).
double azimuth_deg(const Point & p);

/// Smallest angle between two azimuths, in [0, 180].
double circular_distance_deg(double a, double b);

/// Each point is dropped independently with probability `drop_rate`.
/// Throws ValidationError if the rate is outside [0, 1].
PointCloud drop_points(const PointCloud & pc, double drop_rate, DerivedSeed seed);

/// Keeps points whose azimuth is within width/2 of the window centre.
PointCloud restrict_angular(const PointCloud & pc, const AngularWindow & window);

/// Removes every point whose ring is in `beams`. Requires ring indices on all
/// points and every index (in the cloud and in `beams`) inside [0, num_beams).
PointCloud drop_beams(const PointCloud & pc, const std::set<int> & beams, int num_beams);

/// `count` distinct beams out of [0, num_beams), sampled without replacement
/// by a seeded partial Fisher-Yates shuffle.
std::set<int> sample_beams(int num_beams, int count, DerivedSeed seed);

struct RingInference
{
  PointCloud cloud;
  /// All points share one elevation while more than one beam was requested;
  /// every point was assigned ring 0.
  bool degenerate = false;
  int rings_found = 0;
};

/// Assigns ring indices by 1-D clustering of elevation asin(z / range):
/// sorted distinct elevations are split at the (num_beams - 1) widest gaps,
/// ring 0 being the lowest cluster. Throws on an empty cloud or num_beams < 1.
RingInference infer_rings(const PointCloud & pc, int num_beams);

/// Applies a LiDAR failure at a severity using the params ladder. Beam drops
/// on ring-less clouds infer rings first when `infer_missing_rings` is set.
PointCloud apply_lidar_failure(
  const PointCloud & pc, CorruptionType c, Severity s, DerivedSeed seed,
  const ParamsTable & params = ParamsTable::canonical(), bool infer_missing_rings = true);

}  // namespace robobench::lidar
