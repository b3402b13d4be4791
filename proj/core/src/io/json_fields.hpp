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

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include "json.hpp"
#include <string>

#include "robobench/error.hpp"

namespace robobench::io::detail
{

using nlohmann::json;

// `where` prefixes every diagnostic, e.g. "record 3" or "samples[2]".

inline const json & require(const json & obj, const char * key, const std::string & where)
{
  if (!obj.is_object()) {
    throw ValidationError(where + ": expected a JSON object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
  return *it;
}

inline std::string get_string(const json & obj, const char * key, const std::string & where)
{
  const json & v = require(obj, key, where);
  if (!v.is_string()) {
    throw ValidationError(where + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline double get_number(const json & obj, const char * key, const std::string & where)
{
  const json & v = require(obj, key, where);
  if (!v.is_number()) {
    throw ValidationError(where + ": field '" + key + "' must be a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ValidationError(where + ": field '" + key + "' must be finite");
  }
  return d;
}

inline std::int64_t get_integer(const json & obj, const char * key, const std::string & where)
{
  const json & v = require(obj, key, where);
  if (!v.is_number_integer()) {
    throw ValidationError(where + ": field '" + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

template <std::size_t N>
std::array<double, N> get_vector(const json & obj, const char * key, const std::string & where)
{
  const json & v = require(obj, key, where);
  if (!v.is_array() || v.size() != N) {
    throw ValidationError(
      where + ": field '" + key + "' must be an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
      throw ValidationError(where + ": field '" + key + "' must contain finite numbers");
    }
    out[i] = v[i].get<double>();
  }
  return out;
}

/// Rejects keys outside `allowed`.
inline void check_keys(
  const json & obj, std::initializer_list<const char *> allowed, const std::string & where)
{
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char * a : allowed) {
      ok = ok || it.key() == a;
    }
    if (!ok) {
      throw ValidationError(where + ": unknown field '" + it.key() + "'");
    }
  }
}

/// Parses one JSON document, turning parser errors into a line/column message.
inline json parse_json(std::string_view text, const std::string & where)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error & e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError(
      where + ": invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  } catch (const json::exception & e) {
    // e.g. a number literal outside the double range
    throw ValidationError(where + ": invalid JSON: " + e.what());
  }
}

}  // namespace robobench::io::detail

#include "robobench/detection_metrics.hpp"

namespace robobench::io::detail
{

/// Fills the GtBox fields shared by ground truth and predictions.
inline void read_box(const json & rec, detection::GtBox & box, const std::string & where)
{
  box.translation = get_vector<3>(rec, "translation", where);
  box.size = get_vector<3>(rec, "size", where);
  box.yaw = get_number(rec, "yaw", where);
  box.velocity = get_vector<2>(rec, "velocity", where);
  box.class_name = get_string(rec, "class_name", where);
  auto it = rec.find("attribute");
  if (it != rec.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw ValidationError(where + ": field 'attribute' must be a string or null");
    }
    box.attribute = it->get<std::string>();
  }
  try {
    detection::validate(box);
  } catch (const ValidationError & e) {
    throw ValidationError(where + ": " + e.what());
  }
}

/// Splits JSON-lines text, skipping blank lines; `line` is 1-based.
template <typename F>
void for_each_line(std::string_view text, F && f)
{
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view l = text.substr(pos, end - pos);
    ++line;
    if (!l.empty() && l.back() == '\r') {
      l.remove_suffix(1);
    }
    if (l.find_first_not_of(" \t") != std::string_view::npos) {
      f(l, line);
    }
    if (end == text.size()) {
      break;
    }
    pos = end + 1;
  }
}

}  // namespace robobench::io::detail
