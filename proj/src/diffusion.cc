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
#include "picodec/diffusion.h"

#include <cmath>
#include <string>

namespace picodec {

int SolveControls::MaxIterationsFor(int width, int height) const {
  return max_iterations > 0 ? max_iterations : 10 * (width + height);
}

namespace detail {

ReducedOperator::ReducedOperator(const Mask& mask, double shift, double coupling)
    : width_(mask.width()), height_(mask.height()), coupling_(coupling) {
  std::vector<std::int32_t> unknown_of(mask.size(), -1);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask.Test(i)) {
      unknown_of[i] = static_cast<std::int32_t>(free_.size());
      free_.push_back(i);
    }
  }
  neighbours_.resize(free_.size());
  diagonal_.resize(free_.size());
  masked_neighbour_pixels_.assign(4 * free_.size(), -1);
  for (std::size_t k = 0; k < free_.size(); ++k) {
    const int x = static_cast<int>(free_[k] % width_);
    const int y = static_cast<int>(free_[k] / width_);
    const std::array<std::pair<int, int>, 4> offsets = {
        {{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
    int degree = 0;
    int masked = 0;
    for (std::size_t d = 0; d < offsets.size(); ++d) {
      neighbours_[k][d] = -1;
      const int nx = x + offsets[d].first;
      const int ny = y + offsets[d].second;
      if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_) continue;
      ++degree;
      const std::size_t j = mask.Index(nx, ny);
      if (unknown_of[j] >= 0) {
        neighbours_[k][d] = unknown_of[j];
      } else {
        masked_neighbour_pixels_[4 * k + masked++] = static_cast<std::int32_t>(j);
      }
    }
    diagonal_[k] = shift + coupling * degree;
  }
}

void ReducedOperator::Apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t k = 0; k < free_.size(); ++k) {
    double off = 0.0;
    for (std::int32_t j : neighbours_[k]) {
      if (j >= 0) off += x[static_cast<std::size_t>(j)];
    }
    y[k] = diagonal_[k] * x[k] - coupling_ * off;
  }
}

std::vector<double> ReducedOperator::BoundaryTerm(const Image& values) const {
  std::vector<double> out(free_.size(), 0.0);
  for (std::size_t k = 0; k < free_.size(); ++k) {
    double sum = 0.0;
    for (int m = 0; m < 4; ++m) {
      const std::int32_t j = masked_neighbour_pixels_[4 * k + m];
      if (j < 0) break;
      sum += values[static_cast<std::size_t>(j)];
    }
    out[k] = coupling_ * sum;
  }
  return out;
}

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SolveStats ConjugateGradient(const ReducedOperator& op, std::span<const double> b,
                             std::span<double> x, double tolerance,
                             int max_iterations) {
  const std::size_t n = op.unknowns();
  SolveStats stats;
  if (n == 0) return stats;
  const double b_norm = std::sqrt(Dot(b, b));
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return stats;
  }
  const auto diag = op.diagonal();
  std::vector<double> r(n), z(n), p(n), ap(n);
  op.Apply(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = Dot(r, z);
  double r_norm = std::sqrt(Dot(r, r));
  for (int it = 0;; ++it) {
    stats.iterations = it;
    stats.relative_residual = r_norm / b_norm;
    if (stats.relative_residual <= tolerance) return stats;
    if (it >= max_iterations) break;
    op.Apply(p, ap);
    const double p_ap = Dot(p, ap);
    if (!(p_ap > 0.0)) break;  // lost positive definiteness numerically
    const double step = rz / p_ap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_next = Dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    r_norm = std::sqrt(Dot(r, r));
  }
  throw Error(ErrorCode::kNotConverged,
              "conjugate gradient did not reach relative residual " +
                  std::to_string(tolerance) + " within " +
                  std::to_string(max_iterations) + " iterations (at " +
                  std::to_string(stats.relative_residual) + ")");
}

}  // namespace detail

namespace {

void CheckControls(const SolveControls& ctl) {
  if (!(ctl.tolerance > 0.0 && ctl.tolerance < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "solve tolerance must be in (0, 1)");
  }
  if (ctl.max_iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 0");
  }
}

}  // namespace

Image ImplicitStep(const Image& u_prev, const Mask& mask, const Image& dirichlet,
                   double alpha, const SolveControls& ctl, SolveStats* stats) {
  RequireSameShape(u_prev, mask, "implicit_step");
  RequireSameShape(u_prev, dirichlet, "implicit_step");
  CheckControls(ctl);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be finite and positive");
  }
  Image out = u_prev;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.Test(i)) out[i] = dirichlet[i];
  }
  const detail::ReducedOperator op(mask, 1.0, alpha);
  if (op.unknowns() == 0) {
    if (stats) *stats = {};
    return out;
  }
  std::vector<double> rhs = op.BoundaryTerm(dirichlet);
  std::vector<double> x(op.unknowns());
  const auto free = op.free_pixels();
  for (std::size_t k = 0; k < free.size(); ++k) {
    rhs[k] += u_prev[free[k]];
    x[k] = u_prev[free[k]];
  }
  const SolveStats s = detail::ConjugateGradient(
      op, rhs, x, ctl.tolerance,
      ctl.MaxIterationsFor(mask.width(), mask.height()));
  if (stats) *stats = s;
  for (std::size_t k = 0; k < free.size(); ++k) out[free[k]] = x[k];
  return out;
}

Image HarmonicInpaint(const Mask& mask, const Image& data, const SolveControls& ctl,
                      const Image* warm_start, SolveStats* stats) {
  RequireSameShape(mask, data, "harmonic_inpaint");
  CheckControls(ctl);
  if (warm_start) RequireSameShape(mask, *warm_start, "harmonic_inpaint");
  const std::size_t stored = mask.Count();
  if (stored == 0) {
    throw Error(ErrorCode::kUnderdetermined, "underdetermined: no Dirichlet data");
  }
  Image out = data;
  const detail::ReducedOperator op(mask, 0.0, 1.0);
  if (op.unknowns() == 0) {
    if (stats) *stats = {};
    return out;
  }
  double stored_mean = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.Test(i)) stored_mean += data[i];
  }
  stored_mean /= static_cast<double>(stored);

  const std::vector<double> rhs = op.BoundaryTerm(data);
  const auto free = op.free_pixels();
  std::vector<double> x(free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    x[k] = warm_start ? (*warm_start)[free[k]] : stored_mean;
  }
  const SolveStats s = detail::ConjugateGradient(
      op, rhs, x, ctl.tolerance,
      ctl.MaxIterationsFor(mask.width(), mask.height()));
  if (stats) *stats = s;
  for (std::size_t k = 0; k < free.size(); ++k) out[free[k]] = x[k];
  return out;
}

Image LinearDiffusionFilter(const Image& f, double eta, int steps,
                            const SolveControls& ctl) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument, "eta must be finite and positive");
  }
  if (steps <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "steps must be positive");
  }
  const Mask none(f.width(), f.height());
  const double tau = eta / steps;
  Image u = f;
  for (int s = 0; s < steps; ++s) u = ImplicitStep(u, none, u, tau, ctl);
  return u;
}

}  // namespace picodec
