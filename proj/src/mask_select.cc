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
#include "picodec/mask_select.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "picodec/image_ops.h"
#include "picodec/random.h"

namespace picodec {

CriterionField CriterionG(const Image& u_n, const Image& f, double alpha) {
  RequireSameShape(u_n, f, "criterion_g");
  Image g = Laplacian(f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = u_n[i] - f[i] + alpha * g[i];
  }
  return CriterionField(g);
}

CriterionField CriterionE(const Image& u_n) {
  return CriterionField(Laplacian(u_n));
}

std::vector<std::size_t> TopIndices(const CriterionField& field,
                                    std::span<const std::size_t> candidates,
                                    std::size_t count) {
  if (count > candidates.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot select " + std::to_string(count) + " of " +
                    std::to_string(candidates.size()) + " pixels");
  }
  std::vector<std::size_t> order(candidates.begin(), candidates.end());
  const auto before = [&field](std::size_t a, std::size_t b) {
    return field[a] > field[b] || (field[a] == field[b] && a < b);
  };
  if (count < order.size()) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count),
                     order.end(), before);
    order.resize(count);
  }
  std::sort(order.begin(), order.end(), before);
  return order;
}

Mask HardThresholdSelect(const CriterionField& field, std::size_t count) {
  if (count == 0 || count > field.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "hard threshold count must be in [1, " +
                    std::to_string(field.size()) + "], got " +
                    std::to_string(count));
  }
  std::vector<std::size_t> all(field.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Mask mask(field.width(), field.height());
  for (std::size_t i : TopIndices(field, all, count)) mask.Set(i);
  return mask;
}

namespace {

// Scale s such that mean(clip(s * field, 0, 1)) reaches density. Returns
// +infinity when only full saturation of every nonzero value suffices.
double DensityScale(const CriterionField& field, double density) {
  const double n = static_cast<double>(field.size());
  double max_value = 0.0;
  std::size_t nonzero = 0;
  for (double v : field.values()) {
    max_value = std::max(max_value, v);
    if (v > 0.0) ++nonzero;
  }
  if (density >= static_cast<double>(nonzero) / n) {
    return std::numeric_limits<double>::infinity();
  }
  const auto mean_at = [&](double s) {
    double sum = 0.0;
    for (double v : field.values()) sum += std::min(1.0, v * s);
    return sum / n;
  };
  double lo = 0.0;
  double hi = 1.0 / max_value;
  while (mean_at(hi) < density) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mean_at(mid) >= density) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

Mask FloydSteinbergDither(const CriterionField& field, double density) {
  if (!(density > 0.0 && density < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dither density must be in (0, 1)");
  }
  if (field.IsZero()) {
    throw Error(ErrorCode::kDegenerateCriterion,
                "degenerate criterion: field is identically zero");
  }
  const double scale = DensityScale(field, density);
  const int w = field.width();
  const int h = field.height();
  std::vector<double> p(field.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::isinf(scale) ? (field[i] > 0.0 ? 1.0 : 0.0)
                             : std::min(1.0, field[i] * scale);
  }
  Mask mask(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = mask.Index(x, y);
      const double level = p[i] >= 0.5 ? 1.0 : 0.0;
      const double err = p[i] - level;
      if (level > 0.0) mask.Set(i);
      if (x + 1 < w) p[i + 1] += err * (7.0 / 16.0);
      if (y + 1 < h) {
        const std::size_t below = mask.Index(x, y + 1);
        if (x > 0) p[below - 1] += err * (3.0 / 16.0);
        p[below] += err * (5.0 / 16.0);
        if (x + 1 < w) p[below + 1] += err * (1.0 / 16.0);
      }
    }
  }
  return mask;
}

namespace {

struct Site {
  int x;
  int y;
  bool operator==(const Site&) const = default;
};

// Uniform bucket grid over the sites for exact nearest-site queries.
class SiteIndex {
 public:
  SiteIndex(int width, int height, const std::vector<Site>& sites)
      : sites_(sites) {
    const double area = static_cast<double>(width) * height;
    cell_ = std::max(1, static_cast<int>(std::sqrt(area / sites.size())));
    buckets_w_ = (width + cell_ - 1) / cell_;
    buckets_h_ = (height + cell_ - 1) / cell_;
    start_.assign(static_cast<std::size_t>(buckets_w_) * buckets_h_ + 1, 0);
    for (const Site& s : sites) ++start_[Bucket(s.x / cell_, s.y / cell_) + 1];
    for (std::size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];
    members_.resize(sites.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    // Ascending site order within each bucket.
    for (std::size_t k = 0; k < sites.size(); ++k) {
      members_[fill[Bucket(sites[k].x / cell_, sites[k].y / cell_)]++] =
          static_cast<int>(k);
    }
  }

  // Nearest site (ties to the lower index) and its squared distance.
  std::pair<int, long long> Nearest(int x, int y) const {
    const int bx = x / cell_;
    const int by = y / cell_;
    int best = -1;
    long long best_d2 = std::numeric_limits<long long>::max();
    const int max_ring = std::max(buckets_w_, buckets_h_);
    for (int r = 0; r <= max_ring; ++r) {
      for (int dy = -r; dy <= r; ++dy) {
        const int cy = by + dy;
        if (cy < 0 || cy >= buckets_h_) continue;
        const bool edge_row = dy == -r || dy == r;
        for (int dx = -r; dx <= r; dx += edge_row ? 1 : 2 * std::max(r, 1)) {
          const int cx = bx + dx;
          if (cx < 0 || cx >= buckets_w_) continue;
          const std::size_t b = Bucket(cx, cy);
          for (std::size_t m = start_[b]; m < start_[b + 1]; ++m) {
            const int k = members_[m];
            const long long ddx = sites_[k].x - x;
            const long long ddy = sites_[k].y - y;
            const long long d2 = ddx * ddx + ddy * ddy;
            if (d2 < best_d2 || (d2 == best_d2 && k < best)) {
              best_d2 = d2;
              best = k;
            }
          }
        }
      }
      // Sites in rings beyond r are at least r * cell + 1 away per axis.
      const long long bound = static_cast<long long>(r) * cell_ + 1;
      if (best >= 0 && best_d2 < bound * bound) break;
    }
    return {best, best_d2};
  }

 private:
  std::size_t Bucket(int cx, int cy) const {
    return static_cast<std::size_t>(cy) * buckets_w_ + cx;
  }

  const std::vector<Site>& sites_;
  int cell_ = 1;
  int buckets_w_ = 1;
  int buckets_h_ = 1;
  std::vector<std::size_t> start_;
  std::vector<int> members_;
};

}  // namespace

Mask LloydStipple(const CriterionField& field, std::size_t count,
                  const LloydOptions& options) {
  const Mask* excluded = options.excluded;
  if (excluded) RequireSameShape(field, *excluded, "lloyd_stipple");
  if (options.iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "lloyd iterations must be >= 0");
  }
  const int w = field.width();
  const auto eligible = [excluded](std::size_t i) {
    return excluded == nullptr || !excluded->Test(i);
  };
  std::vector<std::size_t> pool;
  double mass = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!eligible(i)) continue;
    pool.push_back(i);
    mass += field[i];
  }
  if (count == 0 || count > pool.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "lloyd site count must be in [1, " + std::to_string(pool.size()) +
                    "], got " + std::to_string(count));
  }
  if (!(mass > 0.0)) {
    throw Error(ErrorCode::kDegenerateCriterion,
                "degenerate criterion: zero-mass field");
  }

  // Weighted sampling without replacement: keep the largest log(U) / w.
  Rng rng(options.seed);
  std::vector<double> key(field.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i : pool) {
    const double u = 1.0 - rng.Uniform();
    if (field[i] > 0.0) key[i] = std::log(u) / field[i];
  }
  std::vector<std::size_t> seeds = pool;
  std::stable_sort(seeds.begin(), seeds.end(), [&key](std::size_t a, std::size_t b) {
    return key[a] > key[b];
  });
  seeds.resize(count);
  std::vector<Site> sites;
  sites.reserve(count);
  for (std::size_t i : seeds) {
    sites.push_back({static_cast<int>(i % w), static_cast<int>(i / w)});
  }

  std::vector<double> sum_w(count), sum_x(count), sum_y(count);
  std::vector<double> residual(field.size(), 0.0);
  for (int it = 0; it < options.iterations; ++it) {
    std::fill(sum_w.begin(), sum_w.end(), 0.0);
    std::fill(sum_x.begin(), sum_x.end(), 0.0);
    std::fill(sum_y.begin(), sum_y.end(), 0.0);
    {
      const SiteIndex index(w, field.height(), sites);
      for (std::size_t i : pool) {
        const int x = static_cast<int>(i % w);
        const int y = static_cast<int>(i / w);
        const auto [k, d2] = index.Nearest(x, y);
        const double m = field[i];
        sum_w[k] += m;
        sum_x[k] += m * x;
        sum_y[k] += m * y;
        residual[i] = m * static_cast<double>(d2);
      }
    }
    std::vector<Site> moved(count);
    std::vector<std::size_t> empty_cells;
    std::vector<std::uint8_t> occupied(field.size(), 0);
    for (std::size_t k = 0; k < count; ++k) {
      if (sum_w[k] > 0.0) {
        moved[k] = {static_cast<int>(std::floor(sum_x[k] / sum_w[k] + 0.5)),
                    static_cast<int>(std::floor(sum_y[k] / sum_w[k] + 0.5))};
        occupied[static_cast<std::size_t>(moved[k].y) * w + moved[k].x] = 1;
      } else {
        empty_cells.push_back(k);
      }
    }
    if (!empty_cells.empty()) {
      const CriterionField residual_field(w, field.height(), residual);
      const std::size_t want = std::min(pool.size(), empty_cells.size() + count);
      const auto ranked = TopIndices(residual_field, pool, want);
      std::size_t next = 0;
      for (std::size_t k : empty_cells) {
        while (next < ranked.size() && occupied[ranked[next]]) ++next;
        if (next == ranked.size()) {
          moved[k] = sites[k];
          continue;
        }
        const std::size_t i = ranked[next++];
        moved[k] = {static_cast<int>(i % w), static_cast<int>(i / w)};
        occupied[i] = 1;
      }
    }
    const bool settled = moved == sites;
    sites = std::move(moved);
    if (settled) break;
  }

  Mask mask(w, field.height());
  std::size_t selected = 0;
  for (const Site& s : sites) {
    const std::size_t i = mask.Index(s.x, s.y);
    if (eligible(i) && !mask.Test(i)) {
      mask.Set(i);
      ++selected;
    }
  }
  if (selected < count) {
    std::vector<std::size_t> rest;
    for (std::size_t i : pool) {
      if (!mask.Test(i)) rest.push_back(i);
    }
    for (std::size_t i : TopIndices(field, rest, count - selected)) mask.Set(i);
  }
  return mask;
}

}  // namespace picodec
