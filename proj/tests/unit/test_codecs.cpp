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
#include <limits>

#include "fixtures.hpp"
#include "robobench/io.hpp"
#include "robobench/service/journal.hpp"

using namespace robobench;
using namespace robobench::io;

namespace
{

void put_f32(Bytes & b, std::size_t at, float v) { std::memcpy(b.data() + at, &v, 4); }

void put_be32(Bytes & b, std::size_t at, std::uint32_t v)
{
  for (int k = 0; k < 4; ++k) {
    b[at + k] = static_cast<std::uint8_t>(v >> (24 - 8 * k));
  }
}

}  // namespace

TEST(Png, RoundTrip)
{
  for (const auto & img : fixtures::image_fixture(3, 37, 21)) {
    EXPECT_EQ(decode_png(encode_png(img)), img);
  }
  const Image one(1, 1, {1, 2, 3});
  EXPECT_EQ(decode_png(encode_png(one)), one);
}

TEST(Png, EncodingIsDeterministic)
{
  const auto img = fixtures::scene_image(64, 48, 3);
  EXPECT_EQ(encode_png(img), encode_png(img));
}

TEST(Png, RejectsBrokenInput)
{
  const auto bytes = encode_png(fixtures::scene_image(32, 16, 4));
  EXPECT_THROW(decode_png(Bytes{}), DecodeError);
  EXPECT_THROW(decode_png(Bytes(bytes.begin(), bytes.begin() + bytes.size() / 2)), DecodeError);
  Bytes garbage(100, 0x42);
  EXPECT_THROW(decode_png(garbage), DecodeError);
  // 16-bit grayscale is a different format.
  const Gray16 g{2, 2, {1, 2, 3, 4}};
  EXPECT_THROW(decode_png(encode_png_gray16(g)), DecodeError);
}

TEST(Png, RejectsDimensionsTheFileCannotHold)
{
  auto bytes = encode_png(robobench::fixtures::scene_image(8, 8, 1));
  // IHDR: length at 8, type at 12, width/height at 16/20, CRC over type+data at 29.
  put_be32(bytes, 16, 16000);
  put_be32(bytes, 20, 16000);
  const std::string ihdr(bytes.begin() + 12, bytes.begin() + 29);
  put_be32(bytes, 29, service::crc32(ihdr));
  try {
    decode_png(bytes);
    FAIL();
  } catch (const DecodeError & e) {
    EXPECT_NE(std::string(e.what()).find("16000x16000"), std::string::npos) << e.what();
  }
}

TEST(Png, Gray16RoundTrip)
{
  const Gray16 g{3, 2, {0, 1, 256, 65535, 4000, 12}};
  EXPECT_EQ(decode_png_gray16(encode_png_gray16(g)), g);
  EXPECT_THROW(decode_png_gray16(encode_png(Image(2, 2))), DecodeError);
}

TEST(Jpeg, DecodesCloseToSourceAndIsDeterministic)
{
  const auto img = fixtures::scene_image(64, 48, 5);
  const auto a = encode_jpeg(img, 90);
  EXPECT_EQ(a, encode_jpeg(img, 90));
  const auto back = decode_jpeg(a);
  ASSERT_EQ(back.width(), img.width());
  ASSERT_EQ(back.height(), img.height());
  double err = 0;
  for (std::size_t i = 0; i < img.data().size(); ++i) {
    err += std::abs(int(img.data()[i]) - int(back.data()[i]));
  }
  EXPECT_LT(err / img.data().size(), 8.0);
  EXPECT_LT(encode_jpeg(img, 10).size(), a.size());
  EXPECT_THROW(encode_jpeg(img, 0), ValidationError);
  EXPECT_THROW(decode_jpeg(Bytes(a.begin(), a.begin() + 20)), DecodeError);
}

TEST(PointCloudCodec, RoundTrip)
{
  for (bool rings : {true, false}) {
    const auto pc = fixtures::lidar_cloud(257, 32, 7, rings);
    const auto bytes = encode_pointcloud(pc);
    EXPECT_EQ(bytes.size(), pc.size() * kPointRecordBytes);
    EXPECT_EQ(decode_pointcloud(bytes), pc);
  }
  EXPECT_TRUE(decode_pointcloud(Bytes{}).empty());
}

TEST(PointCloudCodec, RejectsBrokenInput)
{
  const auto bytes = encode_pointcloud(fixtures::lidar_cloud(4, 8, 1));
  EXPECT_THROW(decode_pointcloud(Bytes(bytes.begin(), bytes.end() - 3)), DecodeError);
  auto nan = bytes;
  put_f32(nan, 4, std::numeric_limits<float>::quiet_NaN());
  EXPECT_THROW(decode_pointcloud(nan), DecodeError);
  auto half_ring = bytes;
  put_f32(half_ring, 16, 2.5f);
  EXPECT_THROW(decode_pointcloud(half_ring), DecodeError);
  auto low_ring = bytes;
  put_f32(low_ring, 16, -2.f);
  EXPECT_THROW(decode_pointcloud(low_ring), DecodeError);
}

TEST(GridCodec, RoundTripAllTypes)
{
  GridContainer u8;
  u8.dims = {3, 4};
  u8.labels = {0, 1, 2, 255, 0, 1, 2, 3, 4, 5, 6, 7};
  EXPECT_EQ(decode_grid(encode_grid(u8)), u8);

  GridContainer u16;
  u16.dtype = GridDType::u16;
  u16.ignore_value = 65535;
  u16.dims = {2, 2, 2};
  u16.labels = {0, 300, 65535, 4, 5, 6, 7, 8};
  EXPECT_EQ(decode_grid(encode_grid(u16)), u16);

  GridContainer f32;
  f32.dtype = GridDType::f32;
  f32.dims = {2, 1, 3};
  f32.values = {0.f, 0.25f, 1.f, 0.5f, 0.75f, 0.125f};
  EXPECT_EQ(decode_grid(encode_grid(f32)), f32);
}

TEST(GridCodec, RejectsBrokenInput)
{
  GridContainer g;
  g.dims = {2, 2};
  g.labels = {0, 1, 2, 3};
  const auto bytes = encode_grid(g);
  EXPECT_THROW(decode_grid(Bytes(bytes.begin(), bytes.end() - 1)), DecodeError);
  auto extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(decode_grid(extra), DecodeError);
  auto magic = bytes;
  magic[0] = 'X';
  EXPECT_THROW(decode_grid(magic), DecodeError);
  auto dtype = bytes;
  dtype[7] = 9;
  EXPECT_THROW(decode_grid(dtype), DecodeError);
  auto rank = bytes;
  rank[8] = 4;
  EXPECT_THROW(decode_grid(rank), DecodeError);
  auto huge = bytes;
  huge[16] = 0xFF;
  huge[17] = 0xFF;
  huge[18] = 0xFF;
  huge[19] = 0x7F;
  EXPECT_THROW(decode_grid(huge), DecodeError);
  EXPECT_THROW(decode_grid(Bytes{}), DecodeError);
}

TEST(DepthIo, PngAndGridRoundTrip)
{
  fixtures::TempDir dir;
  const DepthMap d{3, 1, {1.5f, 0.f, 80.f}};
  write_depth_grid(d, dir.path() / "d.rbg");
  const auto g = read_depth(dir.path() / "d.rbg");
  EXPECT_EQ(g.values, d.values);

  write_depth_png(DepthMap{3, 1, {1.f / 512.f + 2.f, -1.f, std::nanf("")}}, dir.path() / "d.png");
  const auto p = read_depth(dir.path() / "d.png");
  ASSERT_EQ(p.width, 3);
  EXPECT_NEAR(p.values[0], 2.0, 1.0 / 256.0);
  EXPECT_EQ(p.values[1], 0.f);
  EXPECT_EQ(p.values[2], 0.f);
  EXPECT_THROW(decode_depth(Bytes{1, 2, 3}), DecodeError);
}

TEST(Files, AtomicWriteAndMissingFile)
{
  fixtures::TempDir dir;
  const auto p = dir.path() / "a.txt";
  write_file_atomic(p, std::string_view("hello"));
  EXPECT_EQ(read_text_file(p), "hello");
  write_file_atomic(p, std::string_view("bye"));
  EXPECT_EQ(read_text_file(p), "bye");
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "a.txt.tmp"));
  try {
    read_file(dir.path() / "missing.bin");
    FAIL();
  } catch (const IoError & e) {
    EXPECT_NE(std::string(e.what()).find("missing.bin"), std::string::npos);
  }
}
