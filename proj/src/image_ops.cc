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
#include "picodec/image_ops.h"

#include <algorithm>
#include <cmath>

#include "picodec/random.h"

namespace picodec {

Image AddGaussianNoise(const Image& img, const NoiseSpec& spec) {
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "noise sigma must be >= 0");
  }
  if (spec.sigma == 0.0) return img;
  Rng rng(spec.seed);
  Image out = img;
  for (double& v : out.values()) {
    v = std::clamp(v + spec.sigma * rng.Normal(), 0.0, 1.0);
  }
  return out;
}

Image Laplacian(const Image& img) {
  if (img.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "laplacian needs at least two pixels");
  }
  const int w = img.width();
  const int h = img.height();
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double c = img.at(x, y);
      double sum = 0.0;
      if (x > 0) sum += img.at(x - 1, y) - c;
      if (x + 1 < w) sum += img.at(x + 1, y) - c;
      if (y > 0) sum += img.at(x, y - 1) - c;
      if (y + 1 < h) sum += img.at(x, y + 1) - c;
      out.at(x, y) = sum;
    }
  }
  return out;
}

double Rmse8(const Image& a, const Image& b) {
  RequireSameShape(a, b, "rmse8");
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return 255.0 * std::sqrt(sum / static_cast<double>(a.size()));
}

std::uint8_t QuantizeTo8Bit(double v) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::floor(c * 255.0 + 0.5));
}

}  // namespace picodec
