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

#include "robobench/detection_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace robobench::detection
{

namespace
{

constexpr int kRecallPoints = 101;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool all_finite(std::span<const double> v)
{
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double planar_distance(const GtBox & a, const GtBox & b)
{
  const double dx = a.translation[0] - b.translation[0];
  const double dy = a.translation[1] - b.translation[1];
  return std::sqrt(dx * dx + dy * dy);
}

double velocity_error(const GtBox & gt, const DetBox & pred)
{
  const double dx = pred.velocity[0] - gt.velocity[0];
  const double dy = pred.velocity[1] - gt.velocity[1];
  return std::sqrt(dx * dx + dy * dy);
}

double attribute_error(const GtBox & gt, const DetBox & pred)
{
  if (!gt.attribute || gt.attribute->empty()) {
    return kNaN;
  }
  return pred.attribute == gt.attribute ? 0.0 : 1.0;
}

// Running mean ignoring NaN; all-NaN input yields all ones.
std::vector<double> cummean(const std::vector<double> & x)
{
  if (std::all_of(x.begin(), x.end(), [](double v) { return std::isnan(v); })) {
    return std::vector<double>(x.size(), 1.0);
  }
  std::vector<double> out(x.size(), 0.0);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isnan(x[i])) {
      sum += x[i];
      ++count;
    }
    out[i] = count ? sum / static_cast<double>(count) : 0.0;
  }
  return out;
}

// The 101-point recall grid i / 100.
std::vector<double> recall_grid()
{
  std::vector<double> g(kRecallPoints);
  for (int i = 0; i < kRecallPoints; ++i) {
    g[i] = static_cast<double>(i) / 100.0;
  }
  return g;
}

struct Curves
{
  std::vector<double> precision;  // on the recall grid
  std::vector<double> confidence;  // on the recall grid
  bool empty = true;  // no true positive at all
};

Curves curves(const MatchResult & m)
{
  Curves c;
  if (m.num_gt == 0 || m.num_matches() == 0) {
    c.precision.assign(kRecallPoints, 0.0);
    c.confidence.assign(kRecallPoints, 0.0);
    return c;
  }
  c.empty = false;
  const std::size_t n = m.ranked.size();
  std::vector<double> prec(n);
  std::vector<double> rec(n);
  std::vector<double> conf(n);
  double tp = 0.0;
  double fp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    (m.ranked[i].gt ? tp : fp) += 1.0;
    prec[i] = tp / (fp + tp);
    rec[i] = tp / static_cast<double>(m.num_gt);
    conf[i] = m.ranked[i].score;
  }
  const auto grid = recall_grid();
  c.precision.resize(kRecallPoints);
  c.confidence.resize(kRecallPoints);
  for (int i = 0; i < kRecallPoints; ++i) {
    c.precision[i] = interp(grid[i], rec, prec, 0.0);
    c.confidence[i] = interp(grid[i], rec, conf, 0.0);
  }
  return c;
}

// Last grid index with non-zero confidence.
int max_recall_index(const std::vector<double> & confidence)
{
  for (int i = static_cast<int>(confidence.size()) - 1; i >= 0; --i) {
    if (confidence[i] != 0.0) {
      return i;
    }
  }
  return 0;
}

}  // namespace

void validate(const GtBox & box)
{
  const auto where = [&] { return " (sample " + box.sample.str() + ", class " + box.class_name + ")"; };
  if (box.class_name.empty()) {
    throw ValidationError("box has an empty class name" + where());
  }
  if (!all_finite(box.translation) || !all_finite(box.size) || !std::isfinite(box.yaw) ||
      !all_finite(box.velocity)) {
    throw ValidationError("box has non-finite values" + where());
  }
  for (double s : box.size) {
    if (!(s > 0.0)) {
      throw ValidationError("box sizes must be positive" + where());
    }
  }
}

void validate(const DetBox & box)
{
  validate(static_cast<const GtBox &>(box));
  if (!(box.score >= 0.0 && box.score <= 1.0)) {
    throw ValidationError("score must be in [0, 1] (sample " + box.sample.str() + ")");
  }
}

void DetectionConfig::validate() const
{
  if (class_set.empty()) {
    throw ValidationError("detection config needs at least one class");
  }
  if (dist_thresholds.empty()) {
    throw ValidationError("detection config needs at least one distance threshold");
  }
  for (std::size_t i = 0; i < dist_thresholds.size(); ++i) {
    if (!(dist_thresholds[i] > 0.0) || (i > 0 && !(dist_thresholds[i] > dist_thresholds[i - 1]))) {
      throw ValidationError("distance thresholds must be positive and strictly ascending");
    }
  }
  if (std::find(dist_thresholds.begin(), dist_thresholds.end(), tp_threshold) ==
      dist_thresholds.end()) {
    throw ValidationError("tp_threshold must be one of the distance thresholds");
  }
  if (!(min_recall >= 0.0 && min_recall < 1.0) || !(min_precision >= 0.0 && min_precision < 1.0)) {
    throw ValidationError("min_recall and min_precision must be in [0, 1)");
  }
}

const char * tp_metric_name(TpMetric m)
{
  switch (m) {
    case TpMetric::trans: return "mATE";
    case TpMetric::scale: return "mASE";
    case TpMetric::orient: return "mAOE";
    case TpMetric::vel: return "mAVE";
    case TpMetric::attr: return "mAAE";
  }
  return "?";
}

double TpErrors::get(TpMetric m) const { return const_cast<TpErrors *>(this)->get(m); }

double & TpErrors::get(TpMetric m)
{
  switch (m) {
    case TpMetric::trans: return ate;
    case TpMetric::scale: return ase;
    case TpMetric::orient: return aoe;
    case TpMetric::vel: return ave;
    case TpMetric::attr: return aae;
  }
  return ate;
}

std::size_t MatchResult::num_matches() const
{
  return static_cast<std::size_t>(
    std::count_if(ranked.begin(), ranked.end(), [](const auto & r) { return r.gt.has_value(); }));
}

double interp(double x, std::span<const double> xp, std::span<const double> fp, double right)
{
  const std::size_t n = xp.size();
  if (n == 0) {
    return kNaN;
  }
  if (x > xp[n - 1]) {
    return right;
  }
  if (x < xp[0]) {
    return fp[0];
  }
  // Last j with xp[j] <= x.
  const auto j = static_cast<std::size_t>(std::upper_bound(xp.begin(), xp.end(), x) - xp.begin()) - 1;
  if (j == n - 1 || xp[j] == x) {
    return fp[j];
  }
  const double slope = (fp[j + 1] - fp[j]) / (xp[j + 1] - xp[j]);
  double v = slope * (x - xp[j]) + fp[j];
  if (std::isnan(v)) {
    v = slope * (x - xp[j + 1]) + fp[j + 1];
    if (std::isnan(v) && fp[j] == fp[j + 1]) {
      v = fp[j];
    }
  }
  return v;
}

double scale_error(const std::array<double, 3> & a, const std::array<double, 3> & b)
{
  const double va = a[0] * a[1] * a[2];
  const double vb = b[0] * b[1] * b[2];
  const double inter = std::min(a[0], b[0]) * std::min(a[1], b[1]) * std::min(a[2], b[2]);
  return 1.0 - inter / (va + vb - inter);
}

double yaw_difference(double a, double b)
{
  constexpr double period = 2.0 * std::numbers::pi;
  const double shifted = a - b + period / 2.0;
  double diff = shifted - period * std::floor(shifted / period) - period / 2.0;
  if (diff > std::numbers::pi) {
    diff -= period;
  }
  return std::abs(diff);
}

MatchResult match_boxes(
  std::span<const DetBox> preds, std::span<const GtBox> gts, const std::string & class_name,
  double d)
{
  MatchResult out;
  std::unordered_map<std::string, std::vector<std::size_t>> gt_by_sample;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (gts[i].class_name == class_name) {
      gt_by_sample[gts[i].sample.str()].push_back(i);
      ++out.num_gt;
    }
  }
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].class_name == class_name) {
      out.ranked.push_back({i, preds[i].score, std::nullopt, 0.0});
    }
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(), [](const auto & a, const auto & b) {
    return a.score > b.score;
  });

  std::vector<bool> taken(gts.size(), false);
  for (auto & r : out.ranked) {
    const auto & p = preds[r.pred];
    auto it = gt_by_sample.find(p.sample.str());
    if (it == gt_by_sample.end()) {
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> best_gt;
    for (std::size_t g : it->second) {
      if (taken[g]) {
        continue;
      }
      const double dist = planar_distance(gts[g], p);
      if (dist < best) {
        best = dist;
        best_gt = g;
      }
    }
    if (best_gt && best <= d) {
      taken[*best_gt] = true;
      r.gt = best_gt;
      r.distance = best;
    }
  }
  for (const auto & [sample, ids] : gt_by_sample) {
    for (std::size_t g : ids) {
      if (!taken[g]) {
        out.unmatched_gts.push_back(g);
      }
    }
  }
  std::sort(out.unmatched_gts.begin(), out.unmatched_gts.end());
  return out;
}

double average_precision(const MatchResult & m, const DetectionConfig & cfg)
{
  const Curves c = curves(m);
  const auto first = static_cast<std::size_t>(std::lround(100.0 * cfg.min_recall)) + 1;
  if (first >= c.precision.size()) {
    return 0.0;
  }
  double sum = 0.0;
  for (std::size_t i = first; i < c.precision.size(); ++i) {
    sum += std::max(c.precision[i] - cfg.min_precision, 0.0);
  }
  const double mean = sum / static_cast<double>(c.precision.size() - first);
  return mean / (1.0 - cfg.min_precision);
}

TpErrors class_tp_errors(
  const MatchResult & m, std::span<const DetBox> preds, std::span<const GtBox> gts,
  const DetectionConfig & cfg, bool attributeless)
{
  TpErrors out;
  const Curves c = curves(m);
  if (attributeless) {
    out.ave = kNaN;
    out.aae = kNaN;
  }
  if (c.empty) {
    return out;
  }
  const int first = static_cast<int>(std::lround(100.0 * cfg.min_recall)) + 1;
  const int last = max_recall_index(c.confidence);

  // Per-match raw errors in ranked order, and their confidences ascending.
  std::vector<double> conf;
  std::array<std::vector<double>, 5> raw;
  for (const auto & r : m.ranked) {
    if (!r.gt) {
      continue;
    }
    const auto & p = preds[r.pred];
    const auto & g = gts[*r.gt];
    conf.push_back(r.score);
    raw[0].push_back(r.distance);
    raw[1].push_back(scale_error(g.size, p.size));
    raw[2].push_back(yaw_difference(g.yaw, p.yaw));
    raw[3].push_back(velocity_error(g, p));
    raw[4].push_back(attribute_error(g, p));
  }
  std::vector<double> conf_asc(conf.rbegin(), conf.rend());

  for (std::size_t k = 0; k < kTpMetrics.size(); ++k) {
    const TpMetric metric = kTpMetrics[k];
    if (attributeless && (metric == TpMetric::vel || metric == TpMetric::attr)) {
      continue;
    }
    if (last < first) {
      out.get(metric) = 1.0;
      continue;
    }
    const auto mean = cummean(raw[k]);
    std::vector<double> mean_asc(mean.rbegin(), mean.rend());
    double sum = 0.0;
    for (int i = first; i <= last; ++i) {
      sum += interp(c.confidence[i], conf_asc, mean_asc, mean_asc.back());
    }
    out.get(metric) = sum / static_cast<double>(last - first + 1);
  }
  return out;
}

double nds(double map, const TpErrors & tp)
{
  double total = 5.0 * map;
  for (TpMetric m : kTpMetrics) {
    const double e = tp.get(m);
    total += std::isnan(e) ? 0.0 : 1.0 - std::min(1.0, e);
  }
  return total / 10.0;
}

DetectionResult evaluate_detection(
  std::span<const DetBox> preds, std::span<const GtBox> gts, const DetectionConfig & cfg,
  std::span<const SampleId> extra_samples)
{
  cfg.validate();
  const std::set<std::string> classes(cfg.class_set.begin(), cfg.class_set.end());
  std::set<std::string> gt_samples;
  for (const auto & id : extra_samples) {
    gt_samples.insert(id.str());
  }
  std::set<std::string> gt_classes;
  for (const auto & g : gts) {
    validate(g);
    if (!classes.contains(g.class_name)) {
      throw ValidationError("ground truth uses unknown class '" + g.class_name + "'");
    }
    gt_samples.insert(g.sample.str());
    gt_classes.insert(g.class_name);
  }
  std::set<std::string> unknown_classes;
  std::set<std::string> unknown_samples;
  for (const auto & p : preds) {
    validate(p);
    if (!classes.contains(p.class_name)) {
      unknown_classes.insert(p.class_name);
    }
    if (!gt_samples.contains(p.sample.str())) {
      unknown_samples.insert(p.sample.str());
    }
  }
  const auto join = [](const std::set<std::string> & s) {
    std::string out;
    for (const auto & v : s) {
      out += (out.empty() ? "" : ", ") + v;
    }
    return out;
  };
  if (!unknown_classes.empty()) {
    throw ValidationError("predictions use unknown class names: " + join(unknown_classes));
  }
  if (!unknown_samples.empty()) {
    throw ValidationError("predictions reference samples without ground truth: " + join(unknown_samples));
  }

  DetectionResult res;
  for (const auto & cls : cfg.class_set) {
    if (gt_classes.contains(cls)) {
      res.included_classes.push_back(cls);
    }
  }
  if (res.included_classes.empty()) {
    throw UndefinedMetricError("no ground-truth boxes in any class; detection metrics are undefined");
  }

  double ap_sum = 0.0;
  for (const auto & cls : res.included_classes) {
    auto & aps = res.ap[cls];
    for (double d : cfg.dist_thresholds) {
      const MatchResult m = match_boxes(preds, gts, cls, d);
      aps.push_back(average_precision(m, cfg));
      ap_sum += aps.back();
      if (d == cfg.tp_threshold) {
        res.class_tp[cls] =
          class_tp_errors(m, preds, gts, cfg, cfg.attributeless_classes.contains(cls));
      }
    }
  }
  res.map = ap_sum / static_cast<double>(res.included_classes.size() * cfg.dist_thresholds.size());

  for (TpMetric metric : kTpMetrics) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto & cls : res.included_classes) {
      const double e = res.class_tp[cls].get(metric);
      if (!std::isnan(e)) {
        sum += e;
        ++n;
      }
    }
    res.tp.get(metric) = n ? sum / static_cast<double>(n) : kNaN;
  }
  res.nds = nds(res.map, res.tp);
  return res;
}

}  // namespace robobench::detection
