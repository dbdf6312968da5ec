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

// Shared test helpers: random instances and dense reference solvers that
// assemble the full |D| x |D| system independently of the library's reduced
// operator.

#ifndef PICODEC_TESTS_TEST_UTIL_H_
#define PICODEC_TESTS_TEST_UTIL_H_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "picodec/image.h"
#include "picodec/pgm.h"
#include "picodec/random.h"

namespace picodec::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(PICODEC_TEST_DATA_DIR) + "/" + name;
}

inline Image BenchmarkImage() { return LoadPgm(DataPath("chelsea256.pgm")); }

inline Image CentreCrop(const Image& img, int side) {
  const int x0 = (img.width() - side) / 2;
  const int y0 = (img.height() - side) / 2;
  Image out(side, side);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) out.at(x, y) = img.at(x0 + x, y0 + y);
  }
  return out;
}

inline Image RandomImage(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  Image img(w, h);
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = rng.Uniform();
  return img;
}

// Smooth random image: a few random cosine modes plus mild texture.
inline Image SmoothRandomImage(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  double a[4], fx[4], fy[4], ph[4];
  for (int k = 0; k < 4; ++k) {
    a[k] = 0.1 + 0.1 * rng.Uniform();
    fx[k] = 0.02 + 0.2 * rng.Uniform();
    fy[k] = 0.02 + 0.2 * rng.Uniform();
    ph[k] = 6.283185307179586 * rng.Uniform();
  }
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.5 + 0.02 * (rng.Uniform() - 0.5);
      for (int k = 0; k < 4; ++k) v += a[k] * std::cos(fx[k] * x + fy[k] * y + ph[k]);
      img.at(x, y) = std::clamp(v, 0.0, 1.0);
    }
  }
  return img;
}

inline Mask RandomMask(int w, int h, double p, std::uint64_t seed) {
  Rng rng(seed);
  Mask m(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) m.Set(i, rng.Uniform() < p);
  return m;
}

inline int DomainNeighbours(int w, int h, int x, int y, int out[4]) {
  int n = 0;
  if (x > 0) out[n++] = y * w + x - 1;
  if (x + 1 < w) out[n++] = y * w + x + 1;
  if (y > 0) out[n++] = (y - 1) * w + x;
  if (y + 1 < h) out[n++] = (y + 1) * w + x;
  return n;
}

// Full system: identity rows on the mask, shift*u - coupling*Lap(u) = rhs off it.
inline Image DenseSolve(const Mask& mask, const Image& dirichlet, const Image& rhs,
                        double shift, double coupling) {
  const int w = mask.width(), h = mask.height();
  const int n = w * h;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int i = y * w + x;
      if (mask.Test(i)) {
        a(i, i) = 1.0;
        b(i) = dirichlet[i];
        continue;
      }
      int nb[4];
      const int k = DomainNeighbours(w, h, x, y, nb);
      a(i, i) = shift + coupling * k;
      for (int j = 0; j < k; ++j) a(i, nb[j]) -= coupling;
      b(i) = rhs[i];
    }
  }
  const Eigen::VectorXd u = a.fullPivLu().solve(b);
  Image out(w, h);
  for (int i = 0; i < n; ++i) out[i] = u(i);
  return out;
}

inline Image DenseImplicitStep(const Image& u_prev, const Mask& mask, const Image& d,
                               double alpha) {
  return DenseSolve(mask, d, u_prev, 1.0, alpha);
}

inline Image DenseHarmonic(const Mask& mask, const Image& data) {
  return DenseSolve(mask, data, Image(mask.width(), mask.height()), 0.0, 1.0);
}

inline double MaxAbsDiff(const Image& a, const Image& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace picodec::testing

#endif  // PICODEC_TESTS_TEST_UTIL_H_
