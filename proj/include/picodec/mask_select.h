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

// Selection criteria and their conversion to masks. All tie-breaking is by
// row-major pixel index, smaller first.

#ifndef PICODEC_MASK_SELECT_H_
#define PICODEC_MASK_SELECT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "picodec/image.h"

namespace picodec {

// |u_n - f + alpha * Lap(f)|, the pointwise sensitivity of the heat-step
// inpainting energy to removing a pixel from the stored set.
CriterionField CriterionG(const Image& u_n, const Image& f, double alpha);

// |Lap(u_n)|; the same sensitivity when the stored values follow u_n.
CriterionField CriterionE(const Image& u_n);

// The `count` candidates with largest field value, ordered by decreasing
// value then increasing index. Requires count <= candidates.size().
std::vector<std::size_t> TopIndices(const CriterionField& field,
                                    std::span<const std::size_t> candidates,
                                    std::size_t count);

// Mask of the `count` largest field values over the whole grid.
Mask HardThresholdSelect(const CriterionField& field, std::size_t count);

// Error-diffusion halftoning of the field rescaled to mean `density`.
//
// The field is mapped to p = clip(s * field, 0, 1) with s found by bisection
// so that mean(p) = density (the smallest s with mean(p) >= density when
// saturation makes the exact value unreachable). p is then dithered in a
// single left-to-right, top-to-bottom raster pass with threshold 0.5 and the
// classic 7/16, 3/16, 5/16, 1/16 weights; error leaving the grid is dropped.
Mask FloydSteinbergDither(const CriterionField& field, double density);

struct LloydOptions {
  int iterations = 30;
  std::uint64_t seed = 0;
  // Pixels that may not be selected; they also carry no mass.
  const Mask* excluded = nullptr;
};

// Weighted Lloyd relaxation (centroidal Voronoi stippling) of `count` sites.
//
// Sites start at a seeded weighted sample without replacement (weights are
// the field values). Each iteration assigns every eligible pixel to its
// nearest site (Euclidean, ties to the lower site index) and moves the site
// to the field-weighted centroid of its cell rounded to the nearest pixel. A
// site whose cell has no mass is moved to the pixel with the largest residual
// field(x) * dist(x, nearest site)^2. The result holds the distinct final
// site pixels, topped up with the highest-field unselected eligible pixels
// until it has exactly `count` pixels.
Mask LloydStipple(const CriterionField& field, std::size_t count,
                  const LloydOptions& options = {});

}  // namespace picodec

#endif  // PICODEC_MASK_SELECT_H_
