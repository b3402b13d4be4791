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

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "robobench/error.hpp"
#include "robobench/io.hpp"

namespace robobench::io
{

namespace
{

// libpng reports errors by longjmp. Everything with a destructor lives in the
// frame that called setjmp and is constructed before it, so the jump never
// skips a destructor. C++ exceptions are only thrown after the png structs are
// released.

struct ErrorSink
{
  char message[256] = "";
};

void on_error(png_structp png, png_const_charp msg)
{
  auto * sink = static_cast<ErrorSink *>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof sink->message, "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

struct MemoryReader
{
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void read_from_memory(png_structp png, png_bytep out, png_size_t length)
{
  auto * r = static_cast<MemoryReader *>(png_get_io_ptr(png));
  if (length > r->bytes.size() - r->offset) {
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, r->bytes.data() + r->offset, length);
  r->offset += length;
}

void write_to_memory(png_structp png, png_bytep data, png_size_t length)
{
  auto * out = static_cast<Bytes *>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_noop(png_structp) {}

struct ReadState
{
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~ReadState() { png_destroy_read_struct(&png, info ? &info : nullptr, nullptr); }
};

struct WriteState
{
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~WriteState() { png_destroy_write_struct(&png, info ? &info : nullptr); }
};

enum class Want { rgb8, gray16 };

struct Raw
{
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;
};

std::string describe(int color_type, int bit_depth)
{
  std::string kind;
  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY: kind = "grayscale"; break;
    case PNG_COLOR_TYPE_GRAY_ALPHA: kind = "grayscale+alpha"; break;
    case PNG_COLOR_TYPE_PALETTE: kind = "palette"; break;
    case PNG_COLOR_TYPE_RGB: kind = "RGB"; break;
    case PNG_COLOR_TYPE_RGB_ALPHA: kind = "RGBA"; break;
    default: kind = "unknown colour type"; break;
  }
  return std::to_string(bit_depth) + "-bit " + kind;
}

Raw decode_raw(std::span<const std::uint8_t> bytes, Want want)
{
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw DecodeError("not a PNG file (bad signature)");
  }
  ErrorSink sink;
  MemoryReader reader{bytes, 8};
  ReadState st;
  Raw raw;
  std::vector<png_bytep> rows;
  std::string mismatch;

  st.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink, on_error, on_warning);
  if (!st.png) {
    throw Error("libpng: cannot allocate read struct");
  }
  st.info = png_create_info_struct(st.png);
  if (!st.info) {
    throw Error("libpng: cannot allocate info struct");
  }
  if (setjmp(png_jmpbuf(st.png))) {
    // `sink` is written before the jump; copy out before the structs go away.
    mismatch = std::string("PNG decode failed: ") + sink.message;
  } else {
    png_set_read_fn(st.png, &reader, read_from_memory);
    png_set_sig_bytes(st.png, 8);
    png_set_user_limits(st.png, kMaxImageDim, kMaxImageDim);
    png_set_chunk_malloc_max(st.png, 8u << 20);
    png_read_info(st.png, st.info);

    png_uint_32 w = 0;
    png_uint_32 h = 0;
    int bit_depth = 0;
    int color_type = 0;
    png_get_IHDR(st.png, st.info, &w, &h, &bit_depth, &color_type, nullptr, nullptr, nullptr);
    const bool ok = want == Want::rgb8
                      ? (color_type == PNG_COLOR_TYPE_RGB && bit_depth == 8)
                      : (color_type == PNG_COLOR_TYPE_GRAY && bit_depth == 16);
    if (!ok) {
      if (want == Want::rgb8) {
        mismatch = "unsupported PNG format " + describe(color_type, bit_depth) +
                   "; expected 8-bit RGB (convert with e.g. `convert in.png -type TrueColor "
                   "-depth 8 PNG24:out.png`)";
      } else {
        mismatch = "unsupported depth PNG format " + describe(color_type, bit_depth) +
                   "; expected 16-bit grayscale with value/256 = metres";
      }
    } else {
      png_set_interlace_handling(st.png);
      png_read_update_info(st.png, st.info);
      const std::size_t stride = png_get_rowbytes(st.png, st.info);
      // Deflate cannot expand by more than ~1032:1, so refuse to allocate for
      // dimensions the file is too small to hold.
      if ((stride + 1) * std::size_t{h} > bytes.size() * std::size_t{1100} + 4096) {
        mismatch = "PNG declares " + std::to_string(w) + "x" + std::to_string(h) + " pixels but holds only " +
                   std::to_string(bytes.size()) + " bytes";
      } else {
        raw.width = w;
        raw.height = h;
        raw.pixels.resize(stride * h);
        rows.resize(h);
        for (png_uint_32 y = 0; y < h; ++y) {
          rows[y] = raw.pixels.data() + y * stride;
        }
        png_read_image(st.png, rows.data());
        png_read_end(st.png, nullptr);
      }
    }
  }
  if (!mismatch.empty()) {
    throw DecodeError(mismatch);
  }
  return raw;
}

Bytes encode_raw(
  std::uint32_t width, std::uint32_t height, int color_type, int bit_depth,
  const std::uint8_t * pixels, std::size_t stride)
{
  ErrorSink sink;
  WriteState st;
  Bytes out;
  std::vector<png_bytep> rows(height);
  bool failed = false;

  st.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink, on_error, on_warning);
  if (!st.png) {
    throw Error("libpng: cannot allocate write struct");
  }
  st.info = png_create_info_struct(st.png);
  if (!st.info) {
    throw Error("libpng: cannot allocate info struct");
  }
  for (std::uint32_t y = 0; y < height; ++y) {
    rows[y] = const_cast<std::uint8_t *>(pixels + y * stride);
  }
  if (setjmp(png_jmpbuf(st.png))) {
    failed = true;
  } else {
    png_set_write_fn(st.png, &out, write_to_memory, flush_noop);
    png_set_IHDR(
      st.png, st.info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
      PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(st.png, st.info);
    png_write_image(st.png, rows.data());
    png_write_end(st.png, nullptr);
  }
  if (failed) {
    throw Error(std::string("PNG encode failed: ") + sink.message);
  }
  return out;
}

}  // namespace

Bytes encode_png(const Image & img)
{
  if (img.empty()) {
    throw ValidationError("cannot encode an empty image");
  }
  const auto w = static_cast<std::uint32_t>(img.width());
  const auto h = static_cast<std::uint32_t>(img.height());
  return encode_raw(w, h, PNG_COLOR_TYPE_RGB, 8, img.data().data(), std::size_t{w} * 3);
}

Image decode_png(std::span<const std::uint8_t> bytes)
{
  Raw raw = decode_raw(bytes, Want::rgb8);
  return Image(static_cast<int>(raw.width), static_cast<int>(raw.height), std::move(raw.pixels));
}

Bytes encode_png_gray16(const Gray16 & img)
{
  if (img.width <= 0 || img.height <= 0) {
    throw ValidationError("cannot encode an empty depth image");
  }
  if (img.values.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw ValidationError("depth image value count does not match its dimensions");
  }
  std::vector<std::uint8_t> be(img.values.size() * 2);
  for (std::size_t i = 0; i < img.values.size(); ++i) {
    be[2 * i] = static_cast<std::uint8_t>(img.values[i] >> 8);
    be[2 * i + 1] = static_cast<std::uint8_t>(img.values[i] & 0xFF);
  }
  const auto w = static_cast<std::uint32_t>(img.width);
  const auto h = static_cast<std::uint32_t>(img.height);
  return encode_raw(w, h, PNG_COLOR_TYPE_GRAY, 16, be.data(), std::size_t{w} * 2);
}

Gray16 decode_png_gray16(std::span<const std::uint8_t> bytes)
{
  const Raw raw = decode_raw(bytes, Want::gray16);
  Gray16 out;
  out.width = static_cast<int>(raw.width);
  out.height = static_cast<int>(raw.height);
  out.values.resize(std::size_t{raw.width} * raw.height);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = static_cast<std::uint16_t>((raw.pixels[2 * i] << 8) | raw.pixels[2 * i + 1]);
  }
  return out;
}

Image read_image(const fs::path & path)
{
  const Bytes bytes = read_file(path);
  try {
    return decode_png(bytes);
  } catch (const DecodeError & e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

void write_image(const Image & img, const fs::path & path)
{
  write_file_atomic(path, encode_png(img));
}

}  // namespace robobench::io
