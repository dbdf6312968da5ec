// Copyright 2026 The picodec Authors. All Rights Reserved.
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
#include <cstdio>
#include <filesystem>
#include <string>

#include "picodec/error.h"
#include "picodec/image.h"
#include "picodec/image_ops.h"
#include "picodec/pgm.h"
#include "picodec/random.h"
#include "test_util.h"

namespace picodec {
namespace {

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no picodec::Error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_EQ(CodeOf([] { Image(0, 3); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Image(2, 2, std::vector<double>(3)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Mask, CountsAndIndices) {
  Mask m(3, 2);
  m.Set(1);
  m.Set(4);
  EXPECT_EQ(m.Count(), 2u);
  EXPECT_DOUBLE_EQ(m.Density(), 2.0 / 6.0);
  EXPECT_EQ(m.Indices(), (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(m.Complement(), (std::vector<std::size_t>{0, 2, 3, 5}));
}

TEST(CriterionField, TakesAbsoluteValuesAndRejectsNaN) {
  const CriterionField f(Grid<double>(2, 1, std::vector<double>{-2.0, 3.0}));
  EXPECT_EQ(f[0], 2.0);
  EXPECT_EQ(f[1], 3.0);
  EXPECT_EQ(CodeOf([] { CriterionField(1, 1, {std::nan("")}); }),
            ErrorCode::kInvalidArgument);
}

TEST(Rng, IsReproducible) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.Normal();
    EXPECT_EQ(x, b.Normal());
  }
  EXPECT_NE(Rng(42).NextU64(), c.NextU64());
  Rng u(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.Uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
    EXPECT_LT(u.UniformInt(10), 10u);
  }
}

TEST(Rng, NormalMoments) {
  Rng rng(1);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(Noise, ZeroSigmaIsIdentity) {
  const Image img = testing::RandomImage(16, 9, 3);
  EXPECT_EQ(AddGaussianNoise(img, {0.0, 5}), img);
}

TEST(Noise, SeededAndClipped) {
  const Image img = testing::RandomImage(32, 32, 3);
  const Image a = AddGaussianNoise(img, {0.3, 11});
  EXPECT_EQ(a, AddGaussianNoise(img, {0.3, 11}));
  EXPECT_NE(a, AddGaussianNoise(img, {0.3, 12}));
  for (double v : a.values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Noise, CalibratedOnMidGray) {
  const Image img(256, 256, 0.5);
  const double r = Rmse8(img, AddGaussianNoise(img, {0.03, 1}));
  EXPECT_NEAR(r, 7.65, 0.02 * 7.65);
}

TEST(Laplacian, ConstantIsZero) {
  const Image lap = Laplacian(Image(5, 4, 0.3));
  for (double v : lap.values()) EXPECT_EQ(v, 0.0);
}

TEST(Laplacian, RampBendsAtTheBoundary) {
  const Image lap = Laplacian(Image(3, 1, std::vector<double>{0, 1, 2}));
  EXPECT_EQ(lap.vector(), (std::vector<double>{1, 0, -1}));
  // Same along the other axis.
  const Image lap_t = Laplacian(Image(1, 3, std::vector<double>{0, 1, 2}));
  EXPECT_EQ(lap_t.vector(), (std::vector<double>{1, 0, -1}));
}

TEST(Laplacian, Impulse) {
  Image img(3, 3);
  img.at(1, 1) = 1.0;
  const Image lap = Laplacian(img);
  EXPECT_EQ(lap.at(1, 1), -4.0);
  EXPECT_EQ(lap.at(0, 1), 1.0);
  EXPECT_EQ(lap.at(2, 1), 1.0);
  EXPECT_EQ(lap.at(1, 0), 1.0);
  EXPECT_EQ(lap.at(1, 2), 1.0);
  EXPECT_EQ(lap.at(0, 0), 0.0);
}

TEST(Laplacian, MatchesBruteForceStencil) {
  const Image u = testing::RandomImage(7, 5, 9);
  const Image lap = Laplacian(u);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 7; ++x) {
      int nb[4];
      const int k = testing::DomainNeighbours(7, 5, x, y, nb);
      double expect = -k * u.at(x, y);
      for (int j = 0; j < k; ++j) expect += u[nb[j]];
      EXPECT_NEAR(lap.at(x, y), expect, 1e-15);
    }
  }
}

TEST(Laplacian, LinearAndZeroSum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Image u = testing::RandomImage(13, 8, seed);
    const Image v = testing::RandomImage(13, 8, seed + 100);
    Image mix(13, 8);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.5 * u[i] - 0.75 * v[i];
    const Image lu = Laplacian(u), lv = Laplacian(v), lm = Laplacian(mix);
    double sum = 0.0;
    for (std::size_t i = 0; i < mix.size(); ++i) {
      EXPECT_NEAR(lm[i], 2.5 * lu[i] - 0.75 * lv[i], 1e-12);
      sum += lu[i];
    }
    EXPECT_LE(std::fabs(sum), 1e-8 * u.size());
  }
}

TEST(Laplacian, RejectsSinglePixel) {
  EXPECT_EQ(CodeOf([] { Laplacian(Image(1, 1)); }), ErrorCode::kInvalidArgument);
}

TEST(Rmse8, Examples) {
  const Image a = testing::RandomImage(8, 8, 1);
  EXPECT_EQ(Rmse8(a, a), 0.0);
  EXPECT_DOUBLE_EQ(Rmse8(Image(4, 4, 0.0), Image(4, 4, 1.0)), 255.0);
  Image b(8, 8);
  Image a2(8, 8);
  for (std::size_t i = 0; i < b.size(); ++i) {
    a2[i] = 0.8 * a[i];
    b[i] = a2[i] + 0.1;
  }
  EXPECT_NEAR(Rmse8(a2, b), 25.5, 1e-9);
  EXPECT_EQ(CodeOf([] { Rmse8(Image(2, 2), Image(2, 3)); }), ErrorCode::kDimensionMismatch);
}

TEST(Quantize, RoundsHalfUp) {
  EXPECT_EQ(QuantizeTo8Bit(0.0), 0);
  EXPECT_EQ(QuantizeTo8Bit(1.0), 255);
  EXPECT_EQ(QuantizeTo8Bit(0.5), 128);
  EXPECT_EQ(QuantizeTo8Bit(-0.2), 0);
  EXPECT_EQ(QuantizeTo8Bit(7.0), 255);
}

TEST(Pgm, ParsesAsciiAndBinary) {
  const Image a = ParsePgm("P2\n# comment\n2 2\n255\n0 255\n255 0\n");
  EXPECT_EQ(a.vector(), (std::vector<double>{0, 1, 1, 0}));
  const std::string p5 = std::string("P5 1 1 255\n") + static_cast<char>(128);
  EXPECT_DOUBLE_EQ(ParsePgm(p5)[0], 128.0 / 255.0);
  const std::string wide = std::string("P5\n2 1\n65535\n") + '\x80' + '\x00' + '\xff' + '\xff';
  const Image w = ParsePgm(wide);
  EXPECT_DOUBLE_EQ(w[0], 32768.0 / 65535.0);
  EXPECT_DOUBLE_EQ(w[1], 1.0);
}

TEST(Pgm, DistinctErrors) {
  try {
    ParsePgm("P6\n1 1\n255\n\x01\x02\x03");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFormat);
    EXPECT_EQ(std::string(e.what()).rfind("unsupported format", 0), 0u);
  }
  EXPECT_EQ(CodeOf([] { ParsePgm("P5\n2 2\n255\n\x01"); }), ErrorCode::kTruncated);
  EXPECT_EQ(CodeOf([] { ParsePgm("P2\n2 2\n255\n1 2 3"); }), ErrorCode::kTruncated);
  EXPECT_EQ(CodeOf([] { ParsePgm("P5\n0 2\n255\n"); }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(CodeOf([] { ParsePgm("P5\n2 2\n70000\n"); }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(CodeOf([] { ParsePgm("P2\n1 1\n255\n300\n"); }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(CodeOf([] { LoadPgm("/nonexistent/x.pgm"); }), ErrorCode::kIo);
}

TEST(Pgm, SaveQuantizesAndRoundTrips) {
  const Image img(3, 1, std::vector<double>{0.0, 1.0, 0.5});
  const std::string bytes = EncodePgm(img);
  ASSERT_GE(bytes.size(), 3u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[bytes.size() - 3]), 0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[bytes.size() - 2]), 255);
  EXPECT_EQ(static_cast<unsigned char>(bytes[bytes.size() - 1]), 128);

  const Image r = testing::RandomImage(17, 11, 5);
  const Image once = ParsePgm(EncodePgm(r));
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_DOUBLE_EQ(once[i], QuantizeTo8Bit(r[i]) / 255.0);
  }
  EXPECT_EQ(ParsePgm(EncodePgm(once)), once);

  const auto path = std::filesystem::temp_directory_path() / "picodec_pgm_test.pgm";
  SavePgm(once, path.string());
  EXPECT_EQ(LoadPgm(path.string()), once);
  std::filesystem::remove(path);
}

TEST(BenchmarkImage, Loads) {
  const Image img = testing::BenchmarkImage();
  EXPECT_EQ(img.width(), 256);
  EXPECT_EQ(img.height(), 256);
}

}  // namespace
}  // namespace picodec
