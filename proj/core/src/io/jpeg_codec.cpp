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

#include <cstdio>
// jpeglib.h needs size_t and FILE declared first.
#include <jpeglib.h>

#include <csetjmp>
#include <cstdlib>

#include "robobench/error.hpp"
#include "robobench/io.hpp"

namespace robobench::io
{

namespace
{

struct ErrorManager
{
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = "";
};

void on_error_exit(j_common_ptr cinfo)
{
  auto * err = reinterpret_cast<ErrorManager *>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void on_output_message(j_common_ptr) {}

struct Compressor
{
  jpeg_compress_struct cinfo{};
  unsigned char * buffer = nullptr;
  unsigned long size = 0;
  bool created = false;
  ~Compressor()
  {
    if (created) {
      jpeg_destroy_compress(&cinfo);
    }
    std::free(buffer);
  }
};

struct Decompressor
{
  jpeg_decompress_struct cinfo{};
  bool created = false;
  ~Decompressor()
  {
    if (created) {
      jpeg_destroy_decompress(&cinfo);
    }
  }
};

}  // namespace

Bytes encode_jpeg(const Image & img, int quality)
{
  if (img.empty()) {
    throw ValidationError("cannot encode an empty image");
  }
  if (quality < 1 || quality > 100) {
    throw ValidationError("JPEG quality must be in [1, 100]");
  }
  ErrorManager err;
  Compressor c;
  c.cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_error_exit;
  err.base.output_message = on_output_message;
  if (setjmp(err.jump)) {
    throw Error(std::string("JPEG encode failed: ") + err.message);
  }
  jpeg_create_compress(&c.cinfo);
  c.created = true;
  jpeg_mem_dest(&c.cinfo, &c.buffer, &c.size);
  c.cinfo.image_width = static_cast<JDIMENSION>(img.width());
  c.cinfo.image_height = static_cast<JDIMENSION>(img.height());
  c.cinfo.input_components = 3;
  c.cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&c.cinfo);
  jpeg_set_quality(&c.cinfo, quality, TRUE);
  c.cinfo.dct_method = JDCT_ISLOW;
  // 4:2:0 chroma subsampling.
  c.cinfo.comp_info[0].h_samp_factor = 2;
  c.cinfo.comp_info[0].v_samp_factor = 2;
  c.cinfo.comp_info[1].h_samp_factor = 1;
  c.cinfo.comp_info[1].v_samp_factor = 1;
  c.cinfo.comp_info[2].h_samp_factor = 1;
  c.cinfo.comp_info[2].v_samp_factor = 1;
  jpeg_start_compress(&c.cinfo, TRUE);
  const std::size_t stride = static_cast<std::size_t>(img.width()) * 3;
  auto * base = const_cast<std::uint8_t *>(img.data().data());
  while (c.cinfo.next_scanline < c.cinfo.image_height) {
    JSAMPROW row = base + c.cinfo.next_scanline * stride;
    jpeg_write_scanlines(&c.cinfo, &row, 1);
  }
  jpeg_finish_compress(&c.cinfo);
  return Bytes(c.buffer, c.buffer + c.size);
}

Image decode_jpeg(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < 4) {
    throw DecodeError("not a JPEG stream (too short)");
  }
  ErrorManager err;
  Decompressor d;
  Image out;
  d.cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_error_exit;
  err.base.output_message = on_output_message;
  if (setjmp(err.jump)) {
    throw DecodeError(std::string("JPEG decode failed: ") + err.message);
  }
  jpeg_create_decompress(&d.cinfo);
  d.created = true;
  jpeg_mem_src(&d.cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&d.cinfo, TRUE);
  if (d.cinfo.image_width > kMaxImageDim || d.cinfo.image_height > kMaxImageDim) {
    throw DecodeError("JPEG dimensions exceed the supported maximum");
  }
  d.cinfo.out_color_space = JCS_RGB;
  d.cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&d.cinfo);
  out = Image(static_cast<int>(d.cinfo.output_width), static_cast<int>(d.cinfo.output_height));
  const std::size_t stride = static_cast<std::size_t>(out.width()) * 3;
  while (d.cinfo.output_scanline < d.cinfo.output_height) {
    JSAMPROW row = out.data().data() + d.cinfo.output_scanline * stride;
    jpeg_read_scanlines(&d.cinfo, &row, 1);
  }
  jpeg_finish_decompress(&d.cinfo);
  return out;
}

}  // namespace robobench::io
