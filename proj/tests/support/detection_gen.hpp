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

#include <random>
#include <vector>

#include "oracles.hpp"
#include "robobench/detection_metrics.hpp"

namespace robobench::fixtures
{

struct DetectionInstance
{
  std::vector<detection::GtBox> gts;
  std::vector<detection::DetBox> preds;
  std::vector<oracle::Box> oracle_gts;
  std::vector<oracle::Box> oracle_preds;
  std::vector<std::string> classes;
  std::vector<SampleId> samples;
};

inline oracle::Box to_oracle(const detection::GtBox & g)
{
  oracle::Box b;
  b.sample = g.sample.str();
  b.x = g.translation[0];
  b.y = g.translation[1];
  b.z = g.translation[2];
  b.w = g.size[0];
  b.l = g.size[1];
  b.h = g.size[2];
  b.yaw = g.yaw;
  b.vx = g.velocity[0];
  b.vy = g.velocity[1];
  b.cls = g.class_name;
  b.attr = g.attribute.value_or("");
  return b;
}

/// Random instance: up to `max_samples` samples, `num_classes` classes, up to
/// `max_boxes` GT boxes per sample, predictions near GT plus clutter. Scores
/// are drawn from a coarse grid so ties occur.
inline DetectionInstance random_detection_instance(
  std::mt19937 & gen, int max_samples = 5, int num_classes = 2, int max_boxes = 10)
{
  const std::vector<std::string> all_classes = {"car", "pedestrian", "barrier"};
  const std::vector<std::string> attrs = {"", "moving", "parked"};
  std::uniform_int_distribution<int> nsamples(1, max_samples), nboxes(0, max_boxes);
  std::uniform_int_distribution<int> cls(0, num_classes - 1), attr(0, 2), score_step(0, 20);
  std::uniform_real_distribution<double> pos(-30, 30), size(0.5, 4.0), yaw(-M_PI, M_PI), vel(-5, 5);
  std::normal_distribution<double> jitter(0.0, 1.0), small(0.0, 0.2);
  std::bernoulli_distribution keep(0.75), clutter(0.3);

  DetectionInstance inst;
  inst.classes.assign(all_classes.begin(), all_classes.begin() + num_classes);
  const int ns = nsamples(gen);
  for (int s = 0; s < ns; ++s) {
    const SampleId id("s" + std::to_string(s));
    inst.samples.push_back(id);
    const int nb = nboxes(gen);
    for (int b = 0; b < nb; ++b) {
      detection::GtBox g;
      g.sample = id;
      g.translation = {pos(gen), pos(gen), 0.5 * jitter(gen)};
      g.size = {size(gen), size(gen), size(gen)};
      g.yaw = yaw(gen);
      g.velocity = {vel(gen), vel(gen)};
      g.class_name = inst.classes[cls(gen)];
      if (const auto & a = attrs[attr(gen)]; !a.empty()) {
        g.attribute = a;
      }
      inst.gts.push_back(g);
      if (keep(gen)) {
        detection::DetBox p;
        static_cast<detection::GtBox &>(p) = g;
        p.translation[0] += jitter(gen);
        p.translation[1] += jitter(gen);
        for (auto & v : p.size) {
          v = std::max(0.1, v + small(gen));
        }
        p.yaw += 3 * small(gen);
        p.velocity[0] += jitter(gen);
        const auto & a = attrs[attr(gen)];
        p.attribute = a.empty() ? std::nullopt : std::optional<std::string>(a);
        p.score = score_step(gen) / 20.0;
        inst.preds.push_back(p);
      }
    }
    const int nclutter = clutter(gen) ? nboxes(gen) / 2 : 0;
    for (int k = 0; k < nclutter; ++k) {
      detection::DetBox p;
      p.sample = id;
      p.translation = {pos(gen), pos(gen), 0.0};
      p.size = {size(gen), size(gen), size(gen)};
      p.yaw = yaw(gen);
      p.class_name = inst.classes[cls(gen)];
      p.score = score_step(gen) / 20.0;
      inst.preds.push_back(p);
    }
  }
  // Shuffle predictions so input order differs from generation order.
  std::shuffle(inst.preds.begin(), inst.preds.end(), gen);
  for (const auto & g : inst.gts) {
    inst.oracle_gts.push_back(to_oracle(g));
  }
  for (const auto & p : inst.preds) {
    auto o = to_oracle(p);
    o.score = p.score;
    inst.oracle_preds.push_back(o);
  }
  return inst;
}

}  // namespace robobench::fixtures
