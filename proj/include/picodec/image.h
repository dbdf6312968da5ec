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

#ifndef PICODEC_IMAGE_H_
#define PICODEC_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "picodec/grid.h"

namespace picodec {

// Grayscale intensities. The canonical range is [0, 1].
class Image : public Grid<double> {
 public:
  using Grid<double>::Grid;
};

// Stored ("Dirichlet") pixels. Backed by bytes rather than vector<bool> so
// that spans and memcpy-style access work.
class Mask : public Grid<std::uint8_t> {
 public:
  using Grid<std::uint8_t>::Grid;

  static Mask Full(int width, int height) { return Mask(width, height, 1); }

  bool Test(std::size_t i) const { return (*this)[i] != 0; }
  void Set(std::size_t i, bool on = true) { (*this)[i] = on ? 1 : 0; }

  std::size_t Count() const;
  double Density() const;
  // Row-major indices of the set pixels.
  std::vector<std::size_t> Indices() const;
  // Row-major indices of the unset pixels.
  std::vector<std::size_t> Complement() const;
};

// Nonnegative per-pixel selection score.
class CriterionField : public Grid<double> {
 public:
  CriterionField() = default;
  // Takes absolute values; rejects non-finite entries.
  explicit CriterionField(const Grid<double>& signed_values);
  CriterionField(int width, int height, std::vector<double> values);

  bool IsZero() const;
};

Image ClipToUnit(Image img);
double Mean(const Image& img);

}  // namespace picodec

#endif  // PICODEC_IMAGE_H_
