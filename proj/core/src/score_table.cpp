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

#include "robobench/score_table.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

#include "io/json_fields.hpp"

namespace robobench
{

namespace
{

using ojson = nlohmann::ordered_json;
using io::detail::get_integer;
using io::detail::get_string;
using io::detail::json;

std::string fmt_value(std::optional<double> v)
{
  if (!v) {
    return "-";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", *v * 100.0);
  return buf;
}

// Is `a` strictly better than `b` in the track's direction?
bool better(Track t, double a, double b) { return higher_is_better(t) ? a > b : a < b; }

struct Column
{
  std::string name;
  std::vector<std::optional<double>> values;  // one per ranked table
  std::optional<double> best;
};

std::vector<Column> columns(std::span<const ScoreTable> ranked)
{
  std::vector<Column> cols;
  const Track t = ranked.front().track;
  cols.push_back({std::string(track_metric(t)), {}, {}});
  for (auto c : track_rows(t)) {
    cols.push_back({std::string(format_corruption(c)), {}, {}});
  }
  cols.push_back({"clean", {}, {}});
  for (const auto & table : ranked) {
    cols[0].values.push_back(table.headline);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      cols[i + 1].values.push_back(table.rows[i].value);
    }
    cols.back().values.push_back(table.clean);
  }
  for (auto & col : cols) {
    for (auto v : col.values) {
      if (v && (!col.best || better(t, *v, *col.best))) {
        col.best = v;
      }
    }
  }
  return cols;
}

std::string csv_escape(const std::string & s)
{
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char ch : s) {
    out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  }
  return out + "\"";
}

std::string md_escape(const std::string & s)
{
  std::string out;
  for (char ch : s) {
    if (ch == '|' || ch == '*' || ch == '_' || ch == '`' || ch == '\\') {
      out += '\\';
    }
    out += ch;
  }
  return out;
}

std::optional<double> opt_number(const json & v, const std::string & where)
{
  if (v.is_null()) {
    return std::nullopt;
  }
  if (!v.is_number() || !std::isfinite(v.get<double>())) {
    throw ValidationError(where + ": expected a finite number or null");
  }
  return v.get<double>();
}

}  // namespace

std::string_view track_metric(Track t)
{
  if (is_detection_track(t)) {
    return "nds";
  }
  if (is_grid_track(t)) {
    return "miou";
  }
  return "abs_rel";
}

bool higher_is_better(Track t) { return t != Track::depth; }

std::vector<CorruptionType> track_rows(Track t)
{
  std::vector<CorruptionType> rows(kCameraCorruptions.begin(), kCameraCorruptions.end());
  if (t == Track::multimodal_detection) {
    for (CorruptionType c : kLidarCorruptions) {
      rows.push_back(c);
    }
  }
  return rows;
}

std::optional<double> headline_mean(std::span<const std::optional<double>> values)
{
  double sum = 0.0;
  std::size_t n = 0;
  for (auto v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) {
    return std::nullopt;
  }
  return sum / static_cast<double>(n);
}

ScoreTable make_score_table(
  Track track, const std::vector<ScoreRow> & rows, std::optional<double> clean,
  ScoreMetadata metadata)
{
  ScoreTable t;
  t.track = track;
  t.clean = clean;
  t.metadata = std::move(metadata);
  for (auto c : track_rows(track)) {
    ScoreRow row{c, std::nullopt, 0};
    for (const auto & r : rows) {
      if (r.corruption == c) {
        row = r;
      }
    }
    t.rows.push_back(row);
  }
  for (const auto & r : rows) {
    const auto order = track_rows(track);
    if (std::find(order.begin(), order.end(), r.corruption) == order.end()) {
      throw ValidationError(
        "corruption " + std::string(format_corruption(r.corruption)) + " is not a row of track " +
        std::string(format_track(track)));
    }
  }
  std::vector<std::optional<double>> values;
  for (const auto & r : t.rows) {
    values.push_back(r.value);
  }
  t.headline = headline_mean(values);
  return t;
}

std::string ScoreTable::to_json() const
{
  ojson doc;
  doc["track"] = std::string(format_track(track));
  doc["metric"] = std::string(metric());
  doc["direction"] = higher_is_better(track) ? "higher_is_better" : "lower_is_better";
  doc["headline"] = headline ? ojson(*headline) : ojson(nullptr);
  doc["clean"] = clean ? ojson(*clean) : ojson(nullptr);
  doc["rows"] = ojson::array();
  for (const auto & r : rows) {
    ojson row;
    row["corruption"] = std::string(format_corruption(r.corruption));
    row["value"] = r.value ? ojson(*r.value) : ojson(nullptr);
    row["num_samples"] = r.num_samples;
    doc["rows"].push_back(std::move(row));
  }
  ojson meta;
  meta["team"] = metadata.team;
  meta["method"] = metadata.method;
  meta["timestamp"] = metadata.timestamp;
  meta["toolkit_version"] = metadata.toolkit_version;
  meta["params_hash"] = metadata.params_hash;
  meta["seed"] = metadata.seed;
  doc["metadata"] = std::move(meta);
  return doc.dump(2) + "\n";
}

ScoreTable ScoreTable::from_json(std::string_view text)
{
  const std::string where = "score table";
  const json doc = io::detail::parse_json(text, where);
  if (!doc.is_object()) {
    throw ValidationError(where + ": expected a JSON object");
  }
  io::detail::check_keys(
    doc, {"track", "metric", "direction", "headline", "clean", "rows", "metadata"}, where);
  const Track track = parse_track(get_string(doc, "track", where));
  if (get_string(doc, "metric", where) != track_metric(track)) {
    throw ValidationError(where + ": metric does not match the track");
  }
  const json & rows = io::detail::require(doc, "rows", where);
  if (!rows.is_array()) {
    throw ValidationError(where + ".rows: expected an array");
  }
  std::vector<ScoreRow> parsed;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string w = where + ".rows[" + std::to_string(i) + "]";
    io::detail::check_keys(rows[i], {"corruption", "value", "num_samples"}, w);
    ScoreRow r;
    r.corruption = parse_corruption(get_string(rows[i], "corruption", w));
    r.value = opt_number(io::detail::require(rows[i], "value", w), w + ".value");
    const auto n = get_integer(rows[i], "num_samples", w);
    if (n < 0) {
      throw ValidationError(w + ".num_samples: must be non-negative");
    }
    r.num_samples = static_cast<std::size_t>(n);
    parsed.push_back(r);
  }
  const auto order = track_rows(track);
  if (parsed.size() != order.size()) {
    throw ValidationError(where + ".rows: expected " + std::to_string(order.size()) + " rows");
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (parsed[i].corruption != order[i]) {
      throw ValidationError(where + ".rows: rows are not in track order");
    }
  }
  const json & meta = io::detail::require(doc, "metadata", where);
  const std::string mw = where + ".metadata";
  io::detail::check_keys(
    meta, {"team", "method", "timestamp", "toolkit_version", "params_hash", "seed"}, mw);
  ScoreMetadata md;
  md.team = get_string(meta, "team", mw);
  md.method = get_string(meta, "method", mw);
  md.timestamp = get_string(meta, "timestamp", mw);
  md.toolkit_version = get_string(meta, "toolkit_version", mw);
  md.params_hash = get_string(meta, "params_hash", mw);
  const json & seed = io::detail::require(meta, "seed", mw);
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw ValidationError(mw + ".seed: expected a non-negative integer");
  }
  md.seed = seed.get<std::uint64_t>();

  ScoreTable t = make_score_table(
    track, parsed, opt_number(io::detail::require(doc, "clean", where), where + ".clean"), md);
  const auto stored = opt_number(io::detail::require(doc, "headline", where), where + ".headline");
  if (stored != t.headline) {
    throw ValidationError(where + ".headline: does not equal the mean of the rows");
  }
  return t;
}

bool ranks_before(const ScoreTable & a, const ScoreTable & b)
{
  if (a.headline.has_value() != b.headline.has_value()) {
    return a.headline.has_value();
  }
  if (a.headline && *a.headline != *b.headline) {
    return better(a.track, *a.headline, *b.headline);
  }
  const auto & ta = a.metadata.timestamp;
  const auto & tb = b.metadata.timestamp;
  if (ta.empty() != tb.empty()) {
    return !ta.empty();
  }
  if (ta != tb) {
    return ta < tb;
  }
  if (a.metadata.team != b.metadata.team) {
    return a.metadata.team < b.metadata.team;
  }
  return a.metadata.method < b.metadata.method;
}

std::vector<std::size_t> rank_tables(std::span<const ScoreTable> tables)
{
  if (tables.empty()) {
    throw ValidationError("no score tables to rank");
  }
  for (const auto & t : tables) {
    if (t.track != tables.front().track) {
      throw ValidationError(
        "cannot rank tables of different tracks (" + std::string(format_track(tables.front().track)) +
        " and " + std::string(format_track(t.track)) + ")");
    }
  }
  std::vector<std::size_t> idx(tables.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(tables[a], tables[b]);
  });
  return idx;
}

std::vector<ScoreTable> best_per_team(std::span<const ScoreTable> tables)
{
  if (tables.empty()) {
    return {};
  }
  std::vector<ScoreTable> out;
  std::map<std::string, bool> seen;
  for (std::size_t i : rank_tables(tables)) {
    if (!seen[tables[i].metadata.team]) {
      seen[tables[i].metadata.team] = true;
      out.push_back(tables[i]);
    }
  }
  return out;
}

std::string render_csv(std::span<const ScoreTable> ranked)
{
  if (ranked.empty()) {
    throw ValidationError("no score tables to report");
  }
  const auto cols = columns(ranked);
  std::string out = "rank,team,method";
  for (const auto & c : cols) {
    out += "," + c.name;
  }
  out += "\n";
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    out += std::to_string(r + 1) + "," + csv_escape(ranked[r].metadata.team) + "," +
           csv_escape(ranked[r].metadata.method);
    for (const auto & c : cols) {
      const auto v = c.values[r];
      out += "," + fmt_value(v) + (v && v == c.best ? "*" : "");
    }
    out += "\n";
  }
  return out;
}

std::string render_markdown(std::span<const ScoreTable> ranked)
{
  if (ranked.empty()) {
    throw ValidationError("no score tables to report");
  }
  const auto cols = columns(ranked);
  const Track t = ranked.front().track;
  std::string out = "# " + std::string(format_track(t)) + " leaderboard\n\n";
  out += "Values x100; " + std::string(higher_is_better(t) ? "higher" : "lower") +
         " is better. Best per column in bold.\n\n";
  out += "| Rank | Team | Method |";
  std::string rule = "|---:|---|---|";
  for (const auto & c : cols) {
    out += " " + md_escape(c.name) + " |";
    rule += "---:|";
  }
  out += "\n" + rule + "\n";
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    out += "| " + std::to_string(r + 1) + " | " + md_escape(ranked[r].metadata.team) + " | " +
           md_escape(ranked[r].metadata.method) + " |";
    for (const auto & c : cols) {
      const auto v = c.values[r];
      const std::string cell = fmt_value(v);
      out += " " + (v && v == c.best ? "**" + cell + "**" : cell) + " |";
    }
    out += "\n";
  }
  return out;
}

}  // namespace robobench
