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

#include "robobench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "robobench/camera_corruptions.hpp"
#include "robobench/depth_metrics.hpp"
#include "robobench/detection_metrics.hpp"
#include "robobench/grid_metrics.hpp"
#include "robobench/io.hpp"
#include "robobench/lidar_failures.hpp"

#ifndef ROBOBENCH_VERSION
#define ROBOBENCH_VERSION "0.0.0"
#endif

namespace robobench
{

namespace fs = std::filesystem;

namespace
{

void copy_bytes(const fs::path & from, const fs::path & to)
{
  io::write_file_atomic(to, io::read_file(from));
}

ManifestSample corrupt_sample(
  const ManifestSample & s, const fs::path & out_dir, const RunConfig & cfg,
  const ParamsTable & params)
{
  const fs::path dir = out_dir / s.id.str();
  fs::create_directories(dir);
  ManifestSample out = s;
  const bool identity = s.corruption == CorruptionType::clean || s.severity.is_identity();

  for (const auto & [name, src] : s.cameras) {
    if (identity || !is_camera(s.corruption)) {
      const fs::path dst = dir / (name + src.extension().string());
      copy_bytes(src, dst);
      out.cameras[name] = dst;
      continue;
    }
    const DerivedSeed seed =
      derive_seed_for_key(cfg.seed, s.id.str() + ":" + name, s.corruption, s.severity);
    const Image img = io::read_image(src);
    const fs::path dst = dir / (name + ".png");
    io::write_image(camera::corrupt_image(img, s.corruption, s.severity, seed, params), dst);
    out.cameras[name] = dst;
  }
  if (s.lidar) {
    const fs::path dst = dir / "lidar.bin";
    if (identity || !is_lidar(s.corruption)) {
      copy_bytes(*s.lidar, dst);
    } else {
      const DerivedSeed seed =
        derive_seed_for_key(cfg.seed, s.id.str() + ":lidar", s.corruption, s.severity);
      const auto pc = io::read_pointcloud(*s.lidar);
      io::write_pointcloud(lidar::apply_lidar_failure(pc, s.corruption, s.severity, seed, params), dst);
    }
    out.lidar = dst;
  }
  if (s.gt) {
    const fs::path dst = dir / ("gt" + s.gt->extension().string());
    copy_bytes(*s.gt, dst);
    out.gt = dst;
  }
  return out;
}

// Samples grouped by corruption, each group in manifest order.
std::map<CorruptionType, std::vector<std::size_t>> group_samples(const Manifest & m)
{
  std::map<CorruptionType, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    groups[m.samples[i].corruption].push_back(i);
  }
  return groups;
}

const fs::path & require_gt(const ManifestSample & s)
{
  if (!s.gt) {
    throw ValidationError("sample '" + s.id.str() + "' has no ground truth in the manifest");
  }
  return *s.gt;
}

// One scored group: value (absent when undefined) plus a warning.
struct GroupScore
{
  std::optional<double> value;
  std::string warning;
};

void throw_first(const std::vector<std::string> & errors)
{
  for (const auto & e : errors) {
    if (!e.empty()) {
      throw ValidationError(e);
    }
  }
}

// ---- detection ------------------------------------------------------------

std::vector<GroupScore> score_detection(
  const Manifest & m, const Submission & sub, const std::vector<std::vector<std::size_t>> & groups,
  const RunConfig & cfg)
{
  std::vector<std::vector<detection::GtBox>> gts(m.samples.size());
  throw_first(parallel_for(m.samples.size(), cfg.jobs, [&](std::size_t i) {
    gts[i] = load_gt_boxes(require_gt(m.samples[i]), m.samples[i].id);
  }));
  std::map<std::string, std::vector<std::size_t>> preds_by_sample;
  for (std::size_t i = 0; i < sub.boxes.size(); ++i) {
    preds_by_sample[sub.boxes[i].sample.str()].push_back(i);
  }
  detection::DetectionConfig dcfg;
  dcfg.class_set = m.classes;
  dcfg.attributeless_classes = {m.attributeless_classes.begin(), m.attributeless_classes.end()};

  std::vector<GroupScore> out(groups.size());
  throw_first(parallel_for(groups.size(), cfg.jobs, [&](std::size_t g) {
    std::vector<detection::GtBox> group_gt;
    std::vector<detection::DetBox> group_pred;
    std::vector<SampleId> group_ids;
    for (std::size_t i : groups[g]) {
      group_ids.push_back(m.samples[i].id);
      group_gt.insert(group_gt.end(), gts[i].begin(), gts[i].end());
      auto it = preds_by_sample.find(m.samples[i].id.str());
      if (it != preds_by_sample.end()) {
        for (std::size_t p : it->second) {
          group_pred.push_back(sub.boxes[p]);
        }
      }
    }
    try {
      out[g].value = detection::evaluate_detection(group_pred, group_gt, dcfg, group_ids).nds;
    } catch (const UndefinedMetricError & e) {
      out[g].warning = e.what();
    }
  }));
  return out;
}

// ---- grids ----------------------------------------------------------------

grid::LabelGrid load_gt_grid(const ManifestSample & s)
{
  io::GridContainer c = io::read_grid(require_gt(s));
  if (c.dtype == io::GridDType::f32) {
    throw ValidationError("ground-truth grid of '" + s.id.str() + "' must hold integer labels");
  }
  return {std::move(c.dims), std::move(c.labels), c.ignore_value};
}

grid::LabelGrid load_pred_grid(const GridPrediction & p, const grid::LabelGrid & gt, std::size_t k)
{
  io::GridContainer c = io::read_grid(p.path);
  const std::string who = "prediction for '" + p.sample.str() + "'";
  if (p.format == GridPrediction::Format::labels) {
    if (c.dtype == io::GridDType::f32) {
      throw ValidationError(who + ": label grids need a u8 or u16 payload");
    }
    if (c.dims != gt.dims) {
      throw ValidationError(who + ": grid shape differs from the ground truth");
    }
    return {std::move(c.dims), std::move(c.labels), gt.ignore_value};
  }
  if (c.dtype != io::GridDType::f32) {
    throw ValidationError(who + ": probability grids need an f32 payload");
  }
  if (c.dims.size() != gt.dims.size() + 1 || c.dims[0] != k ||
      !std::equal(gt.dims.begin(), gt.dims.end(), c.dims.begin() + 1)) {
    throw ValidationError(who + ": probability grid must be (num_classes, ground-truth shape)");
  }
  return grid::labels_from_probabilities(c.dims, c.values, 0, gt.ignore_value);
}

std::vector<GroupScore> score_grids(
  const Manifest & m, const Submission & sub, const std::vector<std::vector<std::size_t>> & groups,
  const RunConfig & cfg)
{
  const std::size_t k = m.classes.size();
  std::map<std::string, const GridPrediction *> pred_by_sample;
  for (const auto & g : sub.grids) {
    pred_by_sample[g.sample.str()] = &g;
  }
  std::vector<std::optional<grid::ConfusionMatrix>> per_sample(m.samples.size());
  throw_first(parallel_for(m.samples.size(), cfg.jobs, [&](std::size_t i) {
    const auto & s = m.samples[i];
    auto it = pred_by_sample.find(s.id.str());
    if (it == pred_by_sample.end()) {
      throw ValidationError("submission has no prediction for sample '" + s.id.str() + "'");
    }
    const grid::LabelGrid gt = load_gt_grid(s);
    const grid::LabelGrid pred = load_pred_grid(*it->second, gt, k);
    grid::ConfusionMatrix cm(k);
    try {
      grid::accumulate(cm, pred, gt);
    } catch (const ValidationError & e) {
      throw ValidationError("sample '" + s.id.str() + "': " + e.what());
    }
    per_sample[i] = std::move(cm);
  }));

  std::optional<std::uint32_t> excluded;
  if (m.empty_class) {
    excluded = static_cast<std::uint32_t>(
      std::find(m.classes.begin(), m.classes.end(), *m.empty_class) - m.classes.begin());
  }
  const auto included = grid::included_classes(k, excluded);
  std::vector<GroupScore> out(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    grid::ConfusionMatrix cm(k);
    for (std::size_t i : groups[g]) {
      cm += *per_sample[i];
    }
    try {
      out[g].value = grid::miou(cm, included);
    } catch (const UndefinedMetricError & e) {
      out[g].warning = e.what();
    }
  }
  return out;
}

// ---- depth ----------------------------------------------------------------

std::vector<GroupScore> score_depth(
  const Manifest & m, const Submission & sub, const std::vector<std::vector<std::size_t>> & groups,
  const RunConfig & cfg)
{
  std::map<std::string, const DepthPrediction *> pred_by_sample;
  for (const auto & d : sub.depths) {
    pred_by_sample[d.sample.str()] = &d;
  }
  depth::DepthConfig dcfg;
  dcfg.median_scaling = cfg.median_scale;

  std::vector<GroupScore> out(groups.size());
  throw_first(parallel_for(groups.size(), cfg.jobs, [&](std::size_t g) {
    std::vector<io::DepthMap> preds;
    std::vector<io::DepthMap> gts;
    for (std::size_t i : groups[g]) {
      const auto & s = m.samples[i];
      auto it = pred_by_sample.find(s.id.str());
      if (it == pred_by_sample.end()) {
        throw ValidationError("submission has no prediction for sample '" + s.id.str() + "'");
      }
      gts.push_back(io::read_depth(require_gt(s)));
      preds.push_back(io::read_depth(it->second->path));
    }
    try {
      const auto r = depth::evaluate_depth_dataset(preds, gts, dcfg, cfg.micro_average);
      out[g].value = r.mean.abs_rel;
      if (r.images_skipped > 0) {
        out[g].warning = std::to_string(r.images_skipped) + " image(s) without valid depth skipped";
      }
    } catch (const UndefinedMetricError & e) {
      out[g].warning = e.what();
    }
  }));
  return out;
}

}  // namespace

std::string toolkit_version() { return ROBOBENCH_VERSION; }

std::vector<std::string> parallel_for(
  std::size_t n, unsigned jobs, const std::function<void(std::size_t)> & fn)
{
  std::vector<std::string> errors(n);
  const auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (const std::exception & e) {
      errors[i] = e.what();
      if (errors[i].empty()) {
        errors[i] = "unknown error";
      }
    }
  };
  unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      run(i);
    }
    return errors;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        run(i);
      }
    });
  }
  for (auto & t : pool) {
    t.join();
  }
  return errors;
}

CorruptReport cmd_corrupt(
  const Manifest & manifest, const fs::path & out_dir, const RunConfig & cfg,
  const ParamsTable & params)
{
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  }
  std::vector<ManifestSample> results(manifest.samples.size());
  const auto errors = parallel_for(manifest.samples.size(), cfg.jobs, [&](std::size_t i) {
    results[i] = corrupt_sample(manifest.samples[i], out_dir, cfg, params);
  });

  CorruptReport report;
  Manifest out = manifest;
  out.samples.clear();
  out.base_dir = out_dir;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (errors[i].empty()) {
      out.samples.push_back(std::move(results[i]));
    } else {
      report.failures.emplace_back(manifest.samples[i].id.str(), errors[i]);
    }
  }
  report.samples_written = out.samples.size();
  report.manifest_path = out_dir / "manifest.json";
  io::write_file_atomic(report.manifest_path, serialize_manifest(out, out_dir));
  return report;
}

EvalResult cmd_eval(
  const Manifest & manifest, const Submission & submission, const RunConfig & cfg,
  const ParamsTable & params)
{
  if (submission.header.track != manifest.track) {
    throw ValidationError(
      "submission track " + std::string(format_track(submission.header.track)) +
      " does not match manifest track " + std::string(format_track(manifest.track)));
  }
  // Group order: track rows, then clean.
  std::vector<CorruptionType> order = track_rows(manifest.track);
  order.push_back(CorruptionType::clean);
  const auto by_corruption = group_samples(manifest);
  std::vector<CorruptionType> present;
  std::vector<std::vector<std::size_t>> groups;
  for (auto c : order) {
    auto it = by_corruption.find(c);
    if (it != by_corruption.end()) {
      present.push_back(c);
      groups.push_back(it->second);
    }
  }

  std::vector<GroupScore> scores;
  if (is_detection_track(manifest.track)) {
    scores = score_detection(manifest, submission, groups, cfg);
  } else if (is_grid_track(manifest.track)) {
    scores = score_grids(manifest, submission, groups, cfg);
  } else {
    scores = score_depth(manifest, submission, groups, cfg);
  }

  EvalResult res;
  std::vector<ScoreRow> rows;
  std::optional<double> clean;
  for (std::size_t g = 0; g < present.size(); ++g) {
    const std::string tag(format_corruption(present[g]));
    if (!scores[g].warning.empty()) {
      res.warnings.push_back(tag + ": " + scores[g].warning);
    }
    if (present[g] == CorruptionType::clean) {
      clean = scores[g].value;
    } else {
      rows.push_back({present[g], scores[g].value, groups[g].size()});
    }
  }
  for (auto c : track_rows(manifest.track)) {
    if (!by_corruption.contains(c)) {
      res.warnings.push_back(std::string(format_corruption(c)) + ": no samples, row absent");
    }
  }
  ScoreMetadata md;
  md.team = submission.header.team;
  md.method = submission.header.method;
  md.timestamp = submission.header.submitted_at.value_or("");
  md.toolkit_version = toolkit_version();
  md.params_hash = hex64(params.hash());
  md.seed = cfg.seed;
  res.table = make_score_table(manifest.track, rows, clean, std::move(md));
  return res;
}

Leaderboard cmd_report(const std::vector<ScoreTable> & tables)
{
  Leaderboard lb;
  for (std::size_t i : rank_tables(tables)) {
    lb.ranked.push_back(tables[i]);
  }
  lb.csv = render_csv(lb.ranked);
  lb.markdown = render_markdown(lb.ranked);
  return lb;
}

}  // namespace robobench
