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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <map>

#include "fixtures.hpp"
#include "robobench/lidar_failures.hpp"

using namespace robobench;
using namespace robobench::lidar;

namespace
{

bool is_subsequence(const PointCloud & out, const PointCloud & in)
{
  std::size_t j = 0;
  for (const auto & p : out.points) {
    while (j < in.size() && !(std::memcmp(&in.points[j], &p, sizeof(Point)) == 0)) {
      ++j;
    }
    if (j == in.size()) {
      return false;
    }
    ++j;
  }
  return true;
}

double oracle_azimuth(const Point & p)
{
  double a = std::atan2(static_cast<double>(p.y), static_cast<double>(p.x)) * 180.0 / M_PI;
  return a < 0 ? a + 360.0 : a;
}

bool in_window(const Point & p, double center, double width)
{
  double d = std::fmod(std::abs(oracle_azimuth(p) - center), 360.0);
  d = std::min(d, 360.0 - d);
  return d <= width / 2;
}

}  // namespace

TEST(DropPoints, Extremes)
{
  const auto pc = robobench::fixtures::lidar_cloud(500, 32, 1);
  EXPECT_EQ(drop_points(pc, 0.0, DerivedSeed{3}), pc);
  EXPECT_TRUE(drop_points(pc, 1.0, DerivedSeed{3}).empty());
  EXPECT_THROW(drop_points(pc, -0.1, DerivedSeed{3}), ValidationError);
  EXPECT_THROW(drop_points(pc, 1.5, DerivedSeed{3}), ValidationError);
}

TEST(DropPoints, BinomialKeptCountAndSubset)
{
  const auto pc = robobench::fixtures::lidar_cloud(10000, 32, 2);
  const auto out = drop_points(pc, 0.5, DerivedSeed{99});
  EXPECT_NEAR(static_cast<double>(out.size()), 5000.0, 5 * 50.0);
  EXPECT_TRUE(is_subsequence(out, pc));
  EXPECT_EQ(out, drop_points(pc, 0.5, DerivedSeed{99}));
}

TEST(RestrictAngular, Examples)
{
  PointCloud pc;
  pc.points = {{1, 0, 0, 0, kNoRing}, {-1, 0, 0, 0, kNoRing}};
  const auto out = restrict_angular(pc, {0.0, 120.0});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.points[0].x, 1.f);
  const auto cloud = robobench::fixtures::lidar_cloud(300, 16, 3);
  EXPECT_EQ(restrict_angular(cloud, {123.0, 360.0}), cloud);
}

TEST(RestrictAngular, MatchesPerPointPredicate)
{
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> centre(0.0, 360.0), width(1.0, 360.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pc = robobench::fixtures::lidar_cloud(400, 8, 100 + trial);
    const AngularWindow w{centre(gen), width(gen)};
    const auto out = restrict_angular(pc, w);
    PointCloud want;
    for (const auto & p : pc.points) {
      if (in_window(p, w.center_deg, w.width_deg)) {
        want.points.push_back(p);
      }
    }
    EXPECT_EQ(out, want);
    EXPECT_EQ(restrict_angular(out, w), out);  // idempotent
  }
}

TEST(RestrictAngular, WindowValidation)
{
  const auto pc = robobench::fixtures::lidar_cloud(10, 4, 1);
  EXPECT_THROW(restrict_angular(pc, {360.0, 90.0}), ValidationError);
  EXPECT_THROW(restrict_angular(pc, {0.0, 0.0}), ValidationError);
  EXPECT_THROW(restrict_angular(pc, {0.0, 361.0}), ValidationError);
}

TEST(DropBeams, MatchesRingHistogram)
{
  const auto pc = robobench::fixtures::lidar_cloud(5000, 32, 4);
  std::map<int, std::size_t> hist;
  for (const auto & p : pc.points) {
    ++hist[p.ring];
  }
  std::set<int> beams;
  for (int r = 0; r < 16; ++r) {
    beams.insert(r);
  }
  const auto out = drop_beams(pc, beams, 32);
  std::size_t want = 0;
  for (int r = 16; r < 32; ++r) {
    want += hist[r];
  }
  EXPECT_EQ(out.size(), want);
  for (const auto & p : out.points) {
    EXPECT_GE(p.ring, 16);
  }
  EXPECT_TRUE(is_subsequence(out, pc));
  EXPECT_EQ(drop_beams(pc, {}, 32), pc);
}

TEST(DropBeams, Errors)
{
  const auto pc = robobench::fixtures::lidar_cloud(50, 8, 5);
  EXPECT_THROW(drop_beams(pc, {8}, 8), ValidationError);
  EXPECT_THROW(drop_beams(pc, {0}, 4), ValidationError);  // rings up to 7 present
  const auto ringless = robobench::fixtures::lidar_cloud(50, 8, 5, false);
  EXPECT_THROW(drop_beams(ringless, {0}, 8), ValidationError);
  EXPECT_THROW(
    apply_lidar_failure(ringless, CorruptionType::lidar_beam_drop, Severity(2), DerivedSeed{1}, ParamsTable::canonical(), false),
    ValidationError);
}

TEST(SampleBeams, DistinctDeterministicAndInRange)
{
  const auto a = sample_beams(32, 8, DerivedSeed{11});
  EXPECT_EQ(a.size(), 8u);
  EXPECT_EQ(a, sample_beams(32, 8, DerivedSeed{11}));
  for (int b : a) {
    EXPECT_GE(b, 0);
    EXPECT_LT(b, 32);
  }
  EXPECT_EQ(sample_beams(32, 32, DerivedSeed{1}).size(), 32u);
  EXPECT_TRUE(sample_beams(32, 0, DerivedSeed{1}).empty());
  EXPECT_THROW(sample_beams(32, 33, DerivedSeed{1}), ValidationError);
}

TEST(InferRings, RecoversDistinctElevations)
{
  for (int beams : {2, 16, 32}) {
    const auto truth = robobench::fixtures::lidar_cloud(3000, beams, 6);
    PointCloud stripped = truth;
    for (auto & p : stripped.points) {
      p.ring = kNoRing;
    }
    const auto r = infer_rings(stripped, beams);
    EXPECT_FALSE(r.degenerate);
    EXPECT_EQ(r.rings_found, beams);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      ASSERT_EQ(r.cloud.points[i].ring, truth.points[i].ring);
    }
  }
}

TEST(InferRings, EdgeCases)
{
  const auto pc = robobench::fixtures::lidar_cloud(100, 8, 7, false);
  for (const auto & p : infer_rings(pc, 1).cloud.points) {
    EXPECT_EQ(p.ring, 0);
  }
  EXPECT_THROW(infer_rings(PointCloud{}, 8), ValidationError);

  PointCloud flat;
  for (int i = 0; i < 20; ++i) {
    flat.points.push_back({static_cast<float>(i + 1), 1.f, 0.f, 0.f, kNoRing});
  }
  const auto r = infer_rings(flat, 4);
  EXPECT_TRUE(r.degenerate);
  for (const auto & p : r.cloud.points) {
    EXPECT_EQ(p.ring, 0);
  }
}

TEST(ApplyLidarFailure, EveryModeIsASubsequence)
{
  for (bool rings : {true, false}) {
    const auto pc = robobench::fixtures::lidar_cloud(2000, 32, 8, rings);
    for (CorruptionType c : kLidarCorruptions) {
      EXPECT_EQ(apply_lidar_failure(pc, c, Severity(0), DerivedSeed{1}), pc);
      for (int s = 1; s <= 5; ++s) {
        const auto seed = derive_seed(1, SampleId("pc"), c, Severity(s));
        const auto out = apply_lidar_failure(pc, c, Severity(s), seed);
        EXPECT_TRUE(is_subsequence(out, pc)) << format_corruption(c);
        EXPECT_LT(out.size(), pc.size());
        EXPECT_EQ(out, apply_lidar_failure(pc, c, Severity(s), seed));
      }
    }
  }
  EXPECT_THROW(
    apply_lidar_failure(PointCloud{}, CorruptionType::fog, Severity(1), DerivedSeed{}), ValidationError);
}

TEST(ApplyLidarFailure, FiltersCommute)
{
  const auto pc = robobench::fixtures::lidar_cloud(3000, 32, 9);
  const AngularWindow w{45.0, 100.0};
  const std::set<int> beams{1, 5, 9, 30};
  EXPECT_EQ(restrict_angular(drop_beams(pc, beams, 32), w), drop_beams(restrict_angular(pc, w), beams, 32));
}
