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
#include <set>

#include "fixtures.hpp"
#include "robobench/camera_corruptions.hpp"

using namespace robobench;

namespace
{

Image constant(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(x, y, 0) = r;
      img.at(x, y, 1) = g;
      img.at(x, y, 2) = b;
    }
  }
  return img;
}

double mean(const Image & img)
{
  double s = 0;
  for (auto v : img.data()) {
    s += v;
  }
  return s / static_cast<double>(img.data().size());
}

double stddev(const Image & img)
{
  const double m = mean(img);
  double s = 0;
  for (auto v : img.data()) {
    s += (v - m) * (v - m);
  }
  return std::sqrt(s / static_cast<double>(img.data().size()));
}

DerivedSeed seed_for(CorruptionType c, int s, const char * id = "img")
{
  return derive_seed(3, SampleId(id), c, Severity(s));
}

}  // namespace

class EveryCameraCorruption : public ::testing::TestWithParam<CorruptionType>
{
};

TEST_P(EveryCameraCorruption, SeverityZeroIsIdentity)
{
  const Image img = robobench::fixtures::scene_image(40, 30, 5);
  EXPECT_EQ(camera::corrupt_image(img, GetParam(), Severity(0), seed_for(GetParam(), 0)), img);
}

TEST_P(EveryCameraCorruption, PreservesDimensionsAndIsDeterministic)
{
  const Image img = robobench::fixtures::scene_image(37, 23, 6);
  for (int s = 1; s <= 5; ++s) {
    const auto a = camera::corrupt_image(img, GetParam(), Severity(s), seed_for(GetParam(), s));
    const auto b = camera::corrupt_image(img, GetParam(), Severity(s), seed_for(GetParam(), s));
    EXPECT_EQ(a.width(), img.width());
    EXPECT_EQ(a.height(), img.height());
    EXPECT_EQ(a, b);
  }
}

TEST_P(EveryCameraCorruption, SurvivesExtremes)
{
  for (std::uint8_t v : {std::uint8_t{0}, std::uint8_t{255}}) {
    const Image img = constant(16, 12, v, v, v);
    for (int s = 1; s <= 5; ++s) {
      const auto out = camera::corrupt_image(img, GetParam(), Severity(s), seed_for(GetParam(), s));
      EXPECT_EQ(out.width(), 16);
      EXPECT_EQ(out.height(), 12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
  Camera, EveryCameraCorruption, ::testing::ValuesIn(kCameraCorruptions),
  [](const auto & info) { return std::string(format_corruption(info.param)); });

TEST(CameraCorruption, RejectsNonCameraTagsAndEmptyImages)
{
  const Image img = constant(4, 4, 10, 10, 10);
  for (CorruptionType c : kLidarCorruptions) {
    EXPECT_THROW(camera::corrupt_image(img, c, Severity(1), {}), ValidationError);
  }
  EXPECT_THROW(camera::corrupt_image(img, CorruptionType::clean, Severity(1), {}), ValidationError);
  EXPECT_THROW(camera::corrupt_image(Image{}, CorruptionType::fog, Severity(1), {}), ValidationError);
}

TEST(CameraCorruption, NoWraparoundAtExtremes)
{
  // Noise around 0 must clip at 0 rather than wrap to bright values, and
  // around 255 must clip rather than wrap to dark ones.
  for (CorruptionType c :
       {CorruptionType::gaussian_noise, CorruptionType::shot_noise, CorruptionType::iso_noise,
        CorruptionType::low_light}) {
    const auto dark = camera::corrupt_image(constant(32, 32, 0, 0, 0), c, Severity(5), seed_for(c, 5));
    const auto light = camera::corrupt_image(constant(32, 32, 255, 255, 255), c, Severity(5), seed_for(c, 5));
    EXPECT_LT(mean(dark), 128) << format_corruption(c);
    if (c != CorruptionType::low_light) {
      EXPECT_GT(mean(light), 128) << format_corruption(c);
    }
  }
}

TEST(Lighting, BrightnessBrightensBlack)
{
  for (int s = 1; s <= 5; ++s) {
    const auto out =
      camera::corrupt_image(constant(8, 8, 0, 0, 0), CorruptionType::brightness, Severity(s), seed_for(CorruptionType::brightness, s));
    EXPECT_GT(mean(out), 0.0);
  }
}

TEST(Lighting, LowLightDarkensWhite)
{
  for (int s = 1; s <= 5; ++s) {
    const auto out =
      camera::corrupt_image(constant(8, 8, 255, 255, 255), CorruptionType::low_light, Severity(s), seed_for(CorruptionType::low_light, s));
    EXPECT_LT(mean(out), 255.0);
  }
}

TEST(Lighting, ContrastKeepsMeanOfUniformGray)
{
  const Image gray = constant(20, 20, 128, 128, 128);
  for (int s = 1; s <= 5; ++s) {
    const auto out = camera::corrupt_image(gray, CorruptionType::contrast, Severity(s), {});
    for (auto v : out.data()) {
      EXPECT_NEAR(v, 128, 1);
    }
  }
}

TEST(Lighting, ContrastMatchesReferenceScaling)
{
  const Image img = robobench::fixtures::scene_image(30, 20, 9);
  const double r = 0.4;
  const auto out = camera::contrast(img, r);
  // Per-channel deviation from the channel mean is scaled by (1 - r).
  for (int c = 0; c < 3; ++c) {
    double m = 0;
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        m += img.at(x, y, c);
      }
    }
    m /= static_cast<double>(img.num_pixels());
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const double want = m + (1 - r) * (img.at(x, y, c) - m);
        EXPECT_NEAR(out.at(x, y, c), want, 1.0);
      }
    }
  }
  EXPECT_EQ(camera::contrast(img, 0.0), img);
}

TEST(Lighting, StrongerContrastReductionLowersSpread)
{
  const Image img = robobench::fixtures::scene_image(48, 32, 10);
  const auto s1 = camera::corrupt_image(img, CorruptionType::contrast, Severity(1), {});
  const auto s5 = camera::corrupt_image(img, CorruptionType::contrast, Severity(5), {});
  EXPECT_LT(stddev(s5), stddev(s1));
}

TEST(Noise, ImpulseZeroIsIdentity)
{
  const Image img = robobench::fixtures::scene_image(20, 20, 1);
  EXPECT_EQ(camera::impulse_noise(img, 0.0, DerivedSeed{1}), img);
}

TEST(Noise, ImpulseCountWithinBinomialBounds)
{
  const Image gray = constant(100, 100, 128, 128, 128);
  const double f = 0.07;
  const auto out = camera::impulse_noise(gray, f, DerivedSeed{77});
  std::size_t altered = 0;
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 100; ++x) {
      altered += out.at(x, y, 0) != 128;
    }
  }
  const double n = 10000, mu = f * n, sigma = std::sqrt(n * f * (1 - f));
  EXPECT_NEAR(static_cast<double>(altered), mu, 5 * sigma);
}

TEST(Noise, GaussianSigmaMatchesOutputSpread)
{
  const Image gray = constant(128, 128, 128, 128, 128);
  for (double sigma : {0.04, 0.08, 0.12}) {
    const auto out = camera::gaussian_noise(gray, sigma, DerivedSeed{5});
    EXPECT_NEAR(stddev(out), sigma * 255.0, 0.1 * sigma * 255.0) << sigma;
  }
}

TEST(Blur, ConstantImageIsFixedPoint)
{
  const Image img = constant(24, 18, 90, 140, 200);
  for (CorruptionType c :
       {CorruptionType::defocus_blur, CorruptionType::glass_blur, CorruptionType::motion_blur,
        CorruptionType::zoom_blur}) {
    for (int s = 1; s <= 5; ++s) {
      EXPECT_EQ(camera::corrupt_image(img, c, Severity(s), seed_for(c, s)), img) << format_corruption(c) << s;
    }
  }
}

TEST(Blur, DefocusSpreadsEnergy)
{
  Image img = constant(21, 21, 0, 0, 0);
  img.at(10, 10, 0) = img.at(10, 10, 1) = img.at(10, 10, 2) = 255;
  const int radius = 3;
  const auto out = camera::defocus_blur(img, radius);
  int peak = 0;
  double total = 0;
  for (int y = 0; y < 21; ++y) {
    for (int x = 0; x < 21; ++x) {
      peak = std::max<int>(peak, out.at(x, y, 0));
      total += out.at(x, y, 0);
    }
  }
  EXPECT_LT(peak, 255);
  // Rounding can move each kernel tap by half a quantum.
  const double taps = (2 * radius + 1) * (2 * radius + 1);
  EXPECT_NEAR(total, 255.0, taps);
  EXPECT_EQ(camera::defocus_blur(img, 0), img);
}

TEST(Blur, MotionLengthOneIsIdentity)
{
  const Image img = robobench::fixtures::scene_image(30, 20, 2);
  EXPECT_EQ(camera::motion_blur(img, 1, DerivedSeed{4}), img);
}

TEST(Weather, FogWeightZeroIsIdentity)
{
  const Image img = robobench::fixtures::scene_image(30, 20, 3);
  EXPECT_EQ(camera::fog(img, 0.0, 2.0, DerivedSeed{4}), img);
}

TEST(Weather, FogOnlyLightens)
{
  const Image img = robobench::fixtures::scene_image(64, 48, 4);
  for (int s = 1; s <= 5; ++s) {
    const auto out = camera::corrupt_image(img, CorruptionType::fog, Severity(s), seed_for(CorruptionType::fog, s));
    for (std::size_t i = 0; i < img.data().size(); ++i) {
      ASSERT_GE(out.data()[i], img.data()[i]);
    }
  }
}

TEST(Weather, SnowIsReproducible)
{
  const Image img = robobench::fixtures::scene_image(64, 48, 4);
  const auto seed = seed_for(CorruptionType::snow, 4);
  EXPECT_EQ(
    camera::corrupt_image(img, CorruptionType::snow, Severity(4), seed),
    camera::corrupt_image(img, CorruptionType::snow, Severity(4), seed));
  EXPECT_NE(
    camera::corrupt_image(img, CorruptionType::snow, Severity(4), seed),
    camera::corrupt_image(img, CorruptionType::snow, Severity(4), seed_for(CorruptionType::snow, 4, "other")));
}

TEST(Digital, NeutralParametersAreIdentity)
{
  const Image img = robobench::fixtures::scene_image(30, 20, 5);
  EXPECT_EQ(camera::pixelate(img, 1), img);
  EXPECT_EQ(camera::posterize(img, 8), img);
}

TEST(Digital, PosterizeLimitsDistinctValues)
{
  const Image img = robobench::fixtures::scene_image(64, 64, 6);
  for (int bits = 1; bits <= 7; ++bits) {
    const auto out = camera::posterize(img, bits);
    for (int c = 0; c < 3; ++c) {
      std::set<int> values;
      for (int y = 0; y < 64; ++y) {
        for (int x = 0; x < 64; ++x) {
          values.insert(out.at(x, y, c));
        }
      }
      EXPECT_LE(values.size(), std::size_t{1} << bits);
    }
  }
}

TEST(Digital, PixelateIsBlockConstant)
{
  const Image img = robobench::fixtures::scene_image(30, 20, 7);
  const auto out = camera::pixelate(img, 4);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 30; ++x) {
      for (int c = 0; c < 3; ++c) {
        ASSERT_EQ(out.at(x, y, c), out.at(x / 4 * 4, y / 4 * 4, c));
      }
    }
  }
}

TEST(Digital, JpegIsDeterministic)
{
  const Image img = robobench::fixtures::scene_image(48, 40, 8);
  EXPECT_EQ(camera::jpeg_roundtrip(img, 20), camera::jpeg_roundtrip(img, 20));
  EXPECT_NE(camera::jpeg_roundtrip(img, 20), img);
}

TEST(Severity, MeanAbsoluteDifferenceIsMonotone)
{
  const auto images = robobench::fixtures::image_fixture();
  for (CorruptionType c : kCameraCorruptions) {
    double prev = -1;
    for (int s = 0; s <= 5; ++s) {
      double total = 0;
      std::size_t n = 0;
      for (std::size_t i = 0; i < images.size(); ++i) {
        const auto seed = derive_seed(0, SampleId("img-" + std::to_string(i)), c, Severity(s));
        const auto out = camera::corrupt_image(images[i], c, Severity(s), seed);
        for (std::size_t k = 0; k < out.data().size(); ++k) {
          total += std::abs(int(out.data()[k]) - int(images[i].data()[k]));
        }
        n += out.data().size();
      }
      const double mad = total / static_cast<double>(n);
      EXPECT_GE(mad, prev) << format_corruption(c) << " severity " << s;
      prev = mad;
    }
  }
}
