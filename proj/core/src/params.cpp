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

#include "robobench/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace robobench
{
namespace
{

// Version 1. Spatial quantities are in pixels, intensities on a [0, 1] scale.
// Editing this text changes its hash and is a breaking change.
constexpr std::string_view kCanonicalText = R"(# robobench corruption parameter table, version 1
# <tag> <severity> <key>=<value> ...
brightness 1 offset=0.1
brightness 2 offset=0.2
brightness 3 offset=0.3
brightness 4 offset=0.4
brightness 5 offset=0.5
low_light 1 dim=0.4 shot=0.002 read=0.004
low_light 2 dim=0.5 shot=0.003 read=0.006
low_light 3 dim=0.6 shot=0.004 read=0.008
low_light 4 dim=0.7 shot=0.005 read=0.01
low_light 5 dim=0.8 shot=0.006 read=0.012
fog 1 weight=0.3 decay=2.0
fog 2 weight=0.4 decay=2.0
fog 3 weight=0.5 decay=1.7
fog 4 weight=0.6 decay=1.5
fog 5 weight=0.7 decay=1.4
frost 1 weight=0.25
frost 2 weight=0.35
frost 3 weight=0.45
frost 4 weight=0.55
frost 5 weight=0.65
snow 1 density=0.04 length=3 whiten=0.2
snow 2 density=0.06 length=5 whiten=0.3
snow 3 density=0.08 length=7 whiten=0.35
snow 4 density=0.1 length=9 whiten=0.4
snow 5 density=0.12 length=11 whiten=0.45
contrast 1 reduction=0.6
contrast 2 reduction=0.7
contrast 3 reduction=0.8
contrast 4 reduction=0.9
contrast 5 reduction=0.95
defocus_blur 1 radius=1
defocus_blur 2 radius=2
defocus_blur 3 radius=3
defocus_blur 4 radius=4
defocus_blur 5 radius=6
glass_blur 1 sigma=0.7 delta=1 iterations=1
glass_blur 2 sigma=0.9 delta=2 iterations=1
glass_blur 3 sigma=1.0 delta=2 iterations=2
glass_blur 4 sigma=1.1 delta=3 iterations=2
glass_blur 5 sigma=1.5 delta=4 iterations=3
motion_blur 1 length=3
motion_blur 2 length=5
motion_blur 3 length=8
motion_blur 4 length=11
motion_blur 5 length=15
zoom_blur 1 max_zoom=1.06 step=0.01
zoom_blur 2 max_zoom=1.11 step=0.01
zoom_blur 3 max_zoom=1.16 step=0.02
zoom_blur 4 max_zoom=1.21 step=0.02
zoom_blur 5 max_zoom=1.26 step=0.03
elastic_transform 1 alpha=1.5 sigma=4
elastic_transform 2 alpha=2.5 sigma=4
elastic_transform 3 alpha=3.5 sigma=4
elastic_transform 4 alpha=4.5 sigma=4
elastic_transform 5 alpha=5.5 sigma=4
quantization 1 bits=5
quantization 2 bits=4
quantization 3 bits=3
quantization 4 bits=2
quantization 5 bits=1
gaussian_noise 1 sigma=0.08
gaussian_noise 2 sigma=0.12
gaussian_noise 3 sigma=0.18
gaussian_noise 4 sigma=0.26
gaussian_noise 5 sigma=0.38
impulse_noise 1 amount=0.03
impulse_noise 2 amount=0.06
impulse_noise 3 amount=0.09
impulse_noise 4 amount=0.17
impulse_noise 5 amount=0.27
shot_noise 1 photons=60
shot_noise 2 photons=25
shot_noise 3 photons=12
shot_noise 4 photons=5
shot_noise 5 photons=3
iso_noise 1 gain=0.01 read=0.02
iso_noise 2 gain=0.02 read=0.03
iso_noise 3 gain=0.03 read=0.04
iso_noise 4 gain=0.05 read=0.05
iso_noise 5 gain=0.08 read=0.06
pixelate 1 factor=2
pixelate 2 factor=3
pixelate 3 factor=4
pixelate 4 factor=6
pixelate 5 factor=8
jpeg_compression 1 quality=25
jpeg_compression 2 quality=18
jpeg_compression 3 quality=15
jpeg_compression 4 quality=10
jpeg_compression 5 quality=7
lidar_points_drop 1 rate=0.1
lidar_points_drop 2 rate=0.2
lidar_points_drop 3 rate=0.3
lidar_points_drop 4 rate=0.5
lidar_points_drop 5 rate=0.7
lidar_angular_restrict 1 center=0 width=240
lidar_angular_restrict 2 center=0 width=180
lidar_angular_restrict 3 center=0 width=120
lidar_angular_restrict 4 center=0 width=90
lidar_angular_restrict 5 center=0 width=60
lidar_beam_drop 1 num_beams=32 count=4
lidar_beam_drop 2 num_beams=32 count=8
lidar_beam_drop 3 num_beams=32 count=12
lidar_beam_drop 4 num_beams=32 count=16
lidar_beam_drop 5 num_beams=32 count=24
)";

constexpr std::uint64_t kCanonicalHash = 0xde619175a0e779fe;

const std::vector<std::string_view> & required_keys(CorruptionType c)
{
  using C = CorruptionType;
  static const std::map<C, std::vector<std::string_view>> keys = {
    {C::brightness, {"offset"}},
    {C::low_light, {"dim", "read", "shot"}},
    {C::fog, {"decay", "weight"}},
    {C::frost, {"weight"}},
    {C::snow, {"density", "length", "whiten"}},
    {C::contrast, {"reduction"}},
    {C::defocus_blur, {"radius"}},
    {C::glass_blur, {"delta", "iterations", "sigma"}},
    {C::motion_blur, {"length"}},
    {C::zoom_blur, {"max_zoom", "step"}},
    {C::elastic_transform, {"alpha", "sigma"}},
    {C::quantization, {"bits"}},
    {C::gaussian_noise, {"sigma"}},
    {C::impulse_noise, {"amount"}},
    {C::shot_noise, {"photons"}},
    {C::iso_noise, {"gain", "read"}},
    {C::pixelate, {"factor"}},
    {C::jpeg_compression, {"quality"}},
    {C::lidar_points_drop, {"rate"}},
    {C::lidar_angular_restrict, {"center", "width"}},
    {C::lidar_beam_drop, {"count", "num_beams"}},
  };
  return keys.at(c);
}

[[noreturn]] void fail(const std::string & source, std::size_t line, const std::string & what)
{
  throw ValidationError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::pair<std::string_view, bool> control_key(CorruptionType c)
{
  using C = CorruptionType;
  switch (c) {
    case C::brightness: return {"offset", true};
    case C::low_light: return {"dim", true};
    case C::fog: return {"weight", true};
    case C::frost: return {"weight", true};
    case C::snow: return {"density", true};
    case C::contrast: return {"reduction", true};
    case C::defocus_blur: return {"radius", true};
    case C::glass_blur: return {"sigma", true};
    case C::motion_blur: return {"length", true};
    case C::zoom_blur: return {"max_zoom", true};
    case C::elastic_transform: return {"alpha", true};
    case C::quantization: return {"bits", false};
    case C::gaussian_noise: return {"sigma", true};
    case C::impulse_noise: return {"amount", true};
    case C::shot_noise: return {"photons", false};
    case C::iso_noise: return {"gain", true};
    case C::pixelate: return {"factor", true};
    case C::jpeg_compression: return {"quality", false};
    case C::lidar_points_drop: return {"rate", true};
    case C::lidar_angular_restrict: return {"width", false};
    case C::lidar_beam_drop: return {"count", true};
    case C::clean: break;
  }
  throw ValidationError("clean has no parameters");
}

std::string_view ParamsTable::canonical_text() { return kCanonicalText; }

std::uint64_t ParamsTable::canonical_hash() { return kCanonicalHash; }

const ParamsTable & ParamsTable::canonical()
{
  static const ParamsTable table = parse(kCanonicalText, "<embedded>");
  return table;
}

ParamsTable ParamsTable::parse(std::string_view text, std::string source)
{
  ParamsTable t;
  t.source_ = std::move(source);
  t.hash_ = fnv1a64(text);

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) {
      continue;
    }
    CorruptionType c;
    try {
      c = parse_corruption(tag);
    } catch (const ValidationError & e) {
      fail(t.source_, lineno, e.what());
    }
    if (c == CorruptionType::clean) {
      fail(t.source_, lineno, "clean takes no parameters");
    }
    int level = 0;
    if (!(fields >> level) || level < 1 || level > Severity::kMax) {
      fail(t.source_, lineno, "expected severity 1..5 after '" + tag + "'");
    }
    Record rec;
    std::string kv;
    while (fields >> kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        fail(t.source_, lineno, "expected key=value, got '" + kv + "'");
      }
      const std::string key = kv.substr(0, eq);
      const std::string val = kv.substr(eq + 1);
      char * end = nullptr;
      const double v = std::strtod(val.c_str(), &end);
      if (val.empty() || end != val.c_str() + val.size() || !std::isfinite(v)) {
        fail(t.source_, lineno, "bad number '" + val + "' for key '" + key + "'");
      }
      if (!rec.emplace(key, v).second) {
        fail(t.source_, lineno, "duplicate key '" + key + "'");
      }
    }
    const auto & req = required_keys(c);
    for (auto k : req) {
      if (!rec.contains(k)) {
        fail(t.source_, lineno, tag + " requires key '" + std::string(k) + "'");
      }
    }
    for (const auto & [k, v] : rec) {
      if (std::find(req.begin(), req.end(), k) == req.end()) {
        fail(t.source_, lineno, "unknown key '" + k + "' for " + tag);
      }
    }
    if (!t.records_.emplace(std::pair{c, level}, std::move(rec)).second) {
      fail(t.source_, lineno, "duplicate record for " + tag + " severity " + std::to_string(level));
    }
  }

  for (CorruptionType c : all_corruption_types()) {
    if (c == CorruptionType::clean) {
      continue;
    }
    const auto [key, increasing] = control_key(c);
    double prev = 0.0;
    for (int level = 1; level <= Severity::kMax; ++level) {
      const auto it = t.records_.find({c, level});
      if (it == t.records_.end()) {
        throw ValidationError(
          t.source_ + ": missing " + std::string(format_corruption(c)) + " severity " +
          std::to_string(level));
      }
      const double v = it->second.find(key)->second;
      if (level > 1 && (increasing ? v < prev : v > prev)) {
        throw ValidationError(
          t.source_ + ": " + std::string(format_corruption(c)) + "." + std::string(key) +
          " is not monotone in severity");
      }
      prev = v;
    }
  }
  return t;
}

ParamsTable ParamsTable::load(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open params table " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const ParamsTable::Record & ParamsTable::record(CorruptionType c, Severity s) const
{
  const auto it = records_.find({c, s.level()});
  if (it == records_.end()) {
    throw ValidationError(
      "no parameters for " + std::string(format_corruption(c)) + " severity " +
      std::to_string(s.level()));
  }
  return it->second;
}

double ParamsTable::get(CorruptionType c, Severity s, std::string_view key) const
{
  const auto & rec = record(c, s);
  const auto it = rec.find(key);
  if (it == rec.end()) {
    throw ValidationError(
      "missing parameter " + std::string(format_corruption(c)) + "." + std::string(key));
  }
  return it->second;
}

ParamsTable resolve_params(const std::optional<std::filesystem::path> & explicit_path)
{
  if (explicit_path) {
    return ParamsTable::load(*explicit_path);
  }
  if (const char * env = std::getenv("ROBOBENCH_PARAMS"); env != nullptr && *env != '\0') {
    return ParamsTable::load(env);
  }
  return ParamsTable::canonical();
}

}  // namespace robobench
