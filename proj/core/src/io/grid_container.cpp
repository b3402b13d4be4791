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

#include <cstring>

#include "robobench/error.hpp"
#include "robobench/io.hpp"

namespace robobench::io
{

namespace
{

constexpr std::size_t kMagicLen = 7;
constexpr std::size_t kFixedHeader = 16;

void put_u32(Bytes & out, std::uint32_t v)
{
  for (int k = 0; k < 4; ++k) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
}

std::uint32_t get_u32(const std::uint8_t * p)
{
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

std::size_t element_size(GridDType t)
{
  switch (t) {
    case GridDType::u8: return 1;
    case GridDType::u16: return 2;
    case GridDType::f32: return 4;
  }
  return 0;
}

// Product of dims, or 0 with `ok` false on overflow past kMaxGridElements.
std::uint64_t checked_product(const std::vector<std::uint32_t> & dims, bool & ok)
{
  std::uint64_t n = 1;
  ok = true;
  for (auto d : dims) {
    n *= d;
    if (n > kMaxGridElements) {
      ok = false;
      return 0;
    }
  }
  return n;
}

}  // namespace

std::uint64_t GridContainer::num_elements() const
{
  bool ok = false;
  const auto n = checked_product(dims, ok);
  return ok ? n : 0;
}

Bytes encode_grid(const GridContainer & g)
{
  if (g.dims.size() != 2 && g.dims.size() != 3) {
    throw ValidationError("grid rank must be 2 or 3");
  }
  bool ok = false;
  const auto n = checked_product(g.dims, ok);
  if (!ok) {
    throw ValidationError("grid has too many elements");
  }
  const bool is_float = g.dtype == GridDType::f32;
  if ((is_float ? g.values.size() : g.labels.size()) != n) {
    throw ValidationError("grid payload size does not match its dimensions");
  }
  Bytes out(kGridMagic, kGridMagic + kMagicLen);
  out.push_back(static_cast<std::uint8_t>(g.dtype));
  out.push_back(static_cast<std::uint8_t>(g.dims.size()));
  out.insert(out.end(), 3, 0);
  put_u32(out, g.ignore_value);
  for (auto d : g.dims) {
    put_u32(out, d);
  }
  out.reserve(out.size() + n * element_size(g.dtype));
  for (std::uint64_t i = 0; i < n; ++i) {
    switch (g.dtype) {
      case GridDType::u8:
        if (g.labels[i] > 0xFF) {
          throw ValidationError("label " + std::to_string(g.labels[i]) + " does not fit in u8");
        }
        out.push_back(static_cast<std::uint8_t>(g.labels[i]));
        break;
      case GridDType::u16:
        if (g.labels[i] > 0xFFFF) {
          throw ValidationError("label " + std::to_string(g.labels[i]) + " does not fit in u16");
        }
        out.push_back(static_cast<std::uint8_t>(g.labels[i]));
        out.push_back(static_cast<std::uint8_t>(g.labels[i] >> 8));
        break;
      case GridDType::f32: {
        std::uint32_t bits;
        std::memcpy(&bits, &g.values[i], 4);
        put_u32(out, bits);
        break;
      }
    }
  }
  return out;
}

GridContainer decode_grid(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < kFixedHeader || std::memcmp(bytes.data(), kGridMagic, kMagicLen) != 0) {
    throw DecodeError("not a grid container (missing RBGRID1 magic)");
  }
  GridContainer g;
  const std::uint8_t dtype = bytes[7];
  if (dtype < 1 || dtype > 3) {
    throw DecodeError("grid container has unknown dtype " + std::to_string(dtype));
  }
  g.dtype = static_cast<GridDType>(dtype);
  const std::uint8_t rank = bytes[8];
  if (rank != 2 && rank != 3) {
    throw DecodeError("grid container rank must be 2 or 3, got " + std::to_string(rank));
  }
  if (bytes[9] != 0 || bytes[10] != 0 || bytes[11] != 0) {
    throw DecodeError("grid container reserved bytes must be zero");
  }
  g.ignore_value = get_u32(bytes.data() + 12);
  const std::size_t header = kFixedHeader + 4u * rank;
  if (bytes.size() < header) {
    throw DecodeError("grid container header is truncated");
  }
  for (std::size_t k = 0; k < rank; ++k) {
    g.dims.push_back(get_u32(bytes.data() + kFixedHeader + 4 * k));
  }
  bool ok = false;
  const auto n = checked_product(g.dims, ok);
  if (!ok) {
    throw DecodeError("grid container dimensions are too large");
  }
  const std::size_t esize = element_size(g.dtype);
  if (bytes.size() - header != n * esize) {
    throw DecodeError(
      "grid container payload is " + std::to_string(bytes.size() - header) + " bytes, expected " +
      std::to_string(n * esize));
  }
  const std::uint8_t * p = bytes.data() + header;
  if (g.dtype == GridDType::f32) {
    g.values.resize(n);
    std::memcpy(g.values.data(), p, n * 4);
  } else {
    g.labels.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      g.labels[i] = g.dtype == GridDType::u8 ? p[i] : (p[2 * i] | p[2 * i + 1] << 8);
    }
  }
  return g;
}

GridContainer read_grid(const fs::path & path)
{
  const Bytes bytes = read_file(path);
  try {
    return decode_grid(bytes);
  } catch (const DecodeError & e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

void write_grid(const GridContainer & grid, const fs::path & path)
{
  write_file_atomic(path, encode_grid(grid));
}

}  // namespace robobench::io
