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
#include "picodec/image.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace picodec {

std::size_t Mask::Count() const {
  return static_cast<std::size_t>(
      std::count_if(values().begin(), values().end(),
                    [](std::uint8_t b) { return b != 0; }));
}

double Mask::Density() const {
  if (empty()) return 0.0;
  return static_cast<double>(Count()) / static_cast<double>(size());
}

std::vector<std::size_t> Mask::Indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (Test(i)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Mask::Complement() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!Test(i)) out.push_back(i);
  }
  return out;
}

CriterionField::CriterionField(const Grid<double>& signed_values)
    : Grid<double>(signed_values) {
  for (double& v : values()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "criterion value is not finite");
    }
    v = std::fabs(v);
  }
}

CriterionField::CriterionField(int width, int height, std::vector<double> values)
    : CriterionField(Grid<double>(width, height, std::move(values))) {}

bool CriterionField::IsZero() const {
  return std::all_of(values().begin(), values().end(),
                     [](double v) { return v == 0.0; });
}

Image ClipToUnit(Image img) {
  for (double& v : img.values()) v = std::clamp(v, 0.0, 1.0);
  return img;
}

double Mean(const Image& img) {
  if (img.empty()) return 0.0;
  return std::accumulate(img.values().begin(), img.values().end(), 0.0) /
         static_cast<double>(img.size());
}

}  // namespace picodec
