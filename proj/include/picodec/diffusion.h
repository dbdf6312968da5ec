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

// Linear diffusion on the pixel grid.
//
// Every solver here eliminates the masked (Dirichlet) pixels: they are removed
// from the unknowns and their values move to the right-hand side. The reduced
// operator is symmetric positive definite whenever it is non-singular, and the
// reduced systems are solved by conjugate gradients with a Jacobi
// preconditioner, applied matrix-free on the five-point stencil. The grid
// boundary is zero-flux (see Laplacian()).

#ifndef PICODEC_DIFFUSION_H_
#define PICODEC_DIFFUSION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "picodec/image.h"

namespace picodec {

struct SolveControls {
  double tolerance = 1e-8;  // relative residual ||b - Ax|| / ||b||
  int max_iterations = 0;   // 0 selects 10 * (width + height)

  int MaxIterationsFor(int width, int height) const;
};

// Filled in by the solvers when the caller asks for it.
struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

// One backward-Euler step of the heat equation: returns u with u = dirichlet
// on the mask and u - alpha * Lap(u) = u_prev elsewhere.
Image ImplicitStep(const Image& u_prev, const Mask& mask, const Image& dirichlet,
                   double alpha, const SolveControls& ctl = {},
                   SolveStats* stats = nullptr);

// Homogeneous diffusion inpainting: Lap(u) = 0 off the mask, u = data on it.
// The mask must not be empty (kUnderdetermined). warm_start, when given,
// seeds CG on the free pixels; the converged result does not depend on it
// beyond the solve tolerance.
Image HarmonicInpaint(const Mask& mask, const Image& data,
                      const SolveControls& ctl = {},
                      const Image* warm_start = nullptr,
                      SolveStats* stats = nullptr);

// Heat flow with zero-flux boundary up to time eta, taken as `steps`
// implicit steps of size eta / steps.
Image LinearDiffusionFilter(const Image& f, double eta, int steps = 10,
                            const SolveControls& ctl = {});

namespace detail {

// The free-pixel operator  shift * I - coupling * Lap  restricted to the
// unmasked pixels, with masked neighbours eliminated. shift = 1 and
// coupling = alpha gives the implicit heat step; shift = 0 and coupling = 1
// gives the harmonic inpainting operator.
class ReducedOperator {
 public:
  ReducedOperator(const Mask& mask, double shift, double coupling);

  std::size_t unknowns() const { return free_.size(); }
  // Pixel index of each unknown, row-major order.
  std::span<const std::size_t> free_pixels() const { return free_; }
  std::span<const double> diagonal() const { return diagonal_; }

  void Apply(std::span<const double> x, std::span<double> y) const;

  // coupling * (sum of masked neighbour values of `values`) per unknown.
  std::vector<double> BoundaryTerm(const Image& values) const;

 private:
  int width_;
  int height_;
  double coupling_;
  std::vector<std::size_t> free_;
  std::vector<std::array<std::int32_t, 4>> neighbours_;  // -1: none / masked
  std::vector<double> diagonal_;
  std::vector<std::int32_t> masked_neighbour_pixels_;  // flattened, -1 padded
};

// Preconditioned CG; x holds the initial guess on entry. Throws kNotConverged.
SolveStats ConjugateGradient(const ReducedOperator& op, std::span<const double> b,
                             std::span<double> x, double tolerance,
                             int max_iterations);

}  // namespace detail
}  // namespace picodec

#endif  // PICODEC_DIFFUSION_H_
