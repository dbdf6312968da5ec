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

#ifndef PICODEC_IMAGE_OPS_H_
#define PICODEC_IMAGE_OPS_H_

#include <cstdint>

#include "picodec/image.h"

namespace picodec {

struct NoiseSpec {
  double sigma = 0.0;  // standard deviation on the [0, 1] scale
  std::uint64_t seed = 0;
};

// out[i] = clip(img[i] + sigma * n_i, 0, 1) with n_i drawn in row-major order
// from Rng(spec.seed).Normal(). sigma == 0 returns the input unchanged.
Image AddGaussianNoise(const Image& img, const NoiseSpec& spec);

// Five-point Laplacian with unit spacing. Out-of-domain neighbours take the
// value of the centre pixel (zero-flux Neumann), so a missing neighbour simply
// drops out of the sum. Requires width * height >= 2.
Image Laplacian(const Image& img);

// Root-mean-square difference on the 8-bit scale: 255 * sqrt(mean((a-b)^2)).
double Rmse8(const Image& a, const Image& b);

// Nearest 8-bit level of a [0, 1] intensity, clipping first; 0.5 -> 128.
std::uint8_t QuantizeTo8Bit(double v);

}  // namespace picodec

#endif  // PICODEC_IMAGE_OPS_H_
