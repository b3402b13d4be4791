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

#include "robobench/lidar_failures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "robobench/rng.hpp"

namespace robobench::lidar
{

bool PointCloud::has_rings() const
{
  return std::all_of(points.begin(), points.end(), [](const Point & p) { return p.ring >= 0; });
}

void AngularWindow::validate() const
{
  if (!(center_deg >= 0.0 && center_deg < 360.0)) {
    throw ValidationError("angular window centre must be in [0, 360)");
  }
  if (!(width_deg > 0.0 && width_deg <= 360.0)) {
    throw ValidationError("angular window width must be in (0, 360]");
  }
}

double azimuth_deg(const Point & p)
{
  double az = std::atan2(static_cast<double>(p.y), static_cast<double>(p.x)) * 180.0 /
              std::numbers::pi;
  if (az < 0.0) {
    az += 360.0;
  }
  if (az >= 360.0) {
    az -= 360.0;
  }
  return az;
}

double circular_distance_deg(double a, double b)
{
  const double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

PointCloud drop_points(const PointCloud & pc, double drop_rate, DerivedSeed seed)
{
  if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) {
    throw ValidationError("drop rate must be in [0, 1]");
  }
  CounterRng rng(seed, 0);
  PointCloud out;
  out.points.reserve(pc.size());
  for (const auto & p : pc.points) {
    if (!rng.bernoulli(drop_rate)) {
      out.points.push_back(p);
    }
  }
  return out;
}

PointCloud restrict_angular(const PointCloud & pc, const AngularWindow & window)
{
  window.validate();
  const double half = window.width_deg / 2.0;
  PointCloud out;
  for (const auto & p : pc.points) {
    if (circular_distance_deg(azimuth_deg(p), window.center_deg) <= half) {
      out.points.push_back(p);
    }
  }
  return out;
}

PointCloud drop_beams(const PointCloud & pc, const std::set<int> & beams, int num_beams)
{
  for (int b : beams) {
    if (b < 0 || b >= num_beams) {
      throw ValidationError(
        "beam index " + std::to_string(b) + " outside [0, " + std::to_string(num_beams) + ")");
    }
  }
  PointCloud out;
  out.points.reserve(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const auto & p = pc.points[i];
    if (p.ring < 0) {
      throw ValidationError(
        "point " + std::to_string(i) + " has no ring index; infer rings before dropping beams");
    }
    if (p.ring >= num_beams) {
      throw ValidationError(
        "point " + std::to_string(i) + " has ring " + std::to_string(p.ring) +
        " outside [0, " + std::to_string(num_beams) + ")");
    }
    if (!beams.contains(p.ring)) {
      out.points.push_back(p);
    }
  }
  return out;
}

std::set<int> sample_beams(int num_beams, int count, DerivedSeed seed)
{
  if (num_beams < 1) {
    throw ValidationError("num_beams must be >= 1");
  }
  if (count < 0 || count > num_beams) {
    throw ValidationError(
      "cannot drop " + std::to_string(count) + " of " + std::to_string(num_beams) + " beams");
  }
  std::vector<int> ids(num_beams);
  std::iota(ids.begin(), ids.end(), 0);
  CounterRng rng(seed, 1);
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_beams - i)));
    std::swap(ids[i], ids[j]);
  }
  return {ids.begin(), ids.begin() + count};
}

RingInference infer_rings(const PointCloud & pc, int num_beams)
{
  if (pc.empty()) {
    throw ValidationError("cannot infer rings of an empty cloud");
  }
  if (num_beams < 1) {
    throw ValidationError("num_beams must be >= 1");
  }
  std::vector<double> elevation(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const auto & p = pc.points[i];
    const double x = p.x;
    const double y = p.y;
    const double z = p.z;
    const double range = std::sqrt(x * x + y * y + z * z);
    elevation[i] = range > 0.0 ? std::asin(std::clamp(z / range, -1.0, 1.0)) : 0.0;
  }

  std::vector<double> distinct = elevation;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  RingInference result;
  result.cloud = pc;
  if (distinct.size() == 1 && num_beams > 1) {
    result.degenerate = true;
  }

  // Split after the widest gaps; ties go to the lower position.
  std::vector<std::size_t> gaps(distinct.size() > 0 ? distinct.size() - 1 : 0);
  std::iota(gaps.begin(), gaps.end(), 0);
  std::stable_sort(gaps.begin(), gaps.end(), [&](std::size_t a, std::size_t b) {
    return distinct[a + 1] - distinct[a] > distinct[b + 1] - distinct[b];
  });
  const std::size_t cuts = std::min<std::size_t>(gaps.size(), static_cast<std::size_t>(num_beams - 1));
  std::vector<double> boundaries;  // a value v belongs to ring = #boundaries <= v
  for (std::size_t k = 0; k < cuts; ++k) {
    boundaries.push_back(distinct[gaps[k] + 1]);
  }
  std::sort(boundaries.begin(), boundaries.end());
  result.rings_found = static_cast<int>(boundaries.size()) + 1;

  for (std::size_t i = 0; i < pc.size(); ++i) {
    const auto ring = std::upper_bound(boundaries.begin(), boundaries.end(), elevation[i]) -
                      boundaries.begin();
    result.cloud.points[i].ring = static_cast<std::int32_t>(ring);
  }
  return result;
}

PointCloud apply_lidar_failure(
  const PointCloud & pc, CorruptionType c, Severity s, DerivedSeed seed,
  const ParamsTable & params, bool infer_missing_rings)
{
  if (!is_lidar(c)) {
    throw ValidationError(
      "apply_lidar_failure expects a LiDAR failure, got " + std::string(format_corruption(c)));
  }
  if (s.is_identity()) {
    return pc;
  }
  switch (c) {
    case CorruptionType::lidar_points_drop:
      return drop_points(pc, params.get(c, s, "rate"), seed);
    case CorruptionType::lidar_angular_restrict:
      return restrict_angular(
        pc, AngularWindow{params.get(c, s, "center"), params.get(c, s, "width")});
    case CorruptionType::lidar_beam_drop: {
      const int num_beams = static_cast<int>(std::lround(params.get(c, s, "num_beams")));
      const int count = static_cast<int>(std::lround(params.get(c, s, "count")));
      const auto beams = sample_beams(num_beams, count, seed);
      if (pc.empty()) {
        return pc;
      }
      if (!pc.has_rings()) {
        if (!infer_missing_rings) {
          throw ValidationError("point cloud has no ring channel and ring inference is disabled");
        }
        // Filter the original points so the output stays a subsequence of
        // the input; inferred rings are not written back.
        const auto inferred = infer_rings(pc, num_beams).cloud;
        PointCloud out;
        for (std::size_t i = 0; i < pc.size(); ++i) {
          if (!beams.contains(inferred.points[i].ring)) {
            out.points.push_back(pc.points[i]);
          }
        }
        return out;
      }
      return drop_beams(pc, beams, num_beams);
    }
    default:
      break;
  }
  throw ValidationError("unhandled LiDAR failure");
}

}  // namespace robobench::lidar
