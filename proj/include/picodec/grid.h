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

#ifndef PICODEC_GRID_H_
#define PICODEC_GRID_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "picodec/error.h"

namespace picodec {

// Row-major 2D array with fixed dimensions. A default-constructed grid is
// 0x0; every other grid has positive width and height.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height), data_(CheckedSize(width, height), fill) {}

  Grid(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != CheckedSize(width, height)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "grid data length " + std::to_string(data_.size()) +
                      " does not match " + std::to_string(width) + "x" +
                      std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T& at(int x, int y) { return data_[Index(x, y)]; }
  const T& at(int x, int y) const { return data_[Index(x, y)]; }

  std::span<T> values() & { return data_; }
  std::span<const T> values() const& { return data_; }
  // A span into a temporary would dangle (e.g. in a range-for).
  std::span<const T> values() const&& = delete;
  const std::vector<T>& vector() const& { return data_; }
  std::vector<T> vector() && { return std::move(data_); }

  template <typename U>
  bool SameShape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  bool operator==(const Grid&) const = default;

 private:
  static std::size_t CheckedSize(int width, int height) {
    if (width <= 0 || height <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid dimensions must be positive, got " +
                      std::to_string(width) + "x" + std::to_string(height));
    }
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

template <typename A, typename B>
void RequireSameShape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (!a.SameShape(b)) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": dimension mismatch " +
                    std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

}  // namespace picodec

#endif  // PICODEC_GRID_H_
