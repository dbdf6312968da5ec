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
// Randomized mask baselines: sparsification (trial deletion with error-based
// reinsertion, no nonlocal pixel exchange) and batched densification.

#include <algorithm>
#include <numeric>

#include "picodec/encoders.h"
#include "picodec/image_ops.h"
#include "picodec/mask_select.h"
#include "picodec/random.h"

namespace picodec {
namespace {

// Uniform sample of k distinct elements (partial Fisher-Yates).
std::vector<std::size_t> SampleWithoutReplacement(std::vector<std::size_t> items,
                                                  std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.UniformInt(items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(k);
  return items;
}

// The k entries with the smallest score, ties to the lower pixel index.
std::vector<std::size_t> SmallestBy(std::vector<std::size_t> items,
                                    const std::vector<double>& score, std::size_t k) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return score[a] < score[b] || (score[a] == score[b] && items[a] < items[b]);
  });
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(items[order[i]]);
  return out;
}

Image Restrict(const Image& values, const Mask& mask) {
  Image out(values.width(), values.height());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.Test(i)) out[i] = values[i];
  }
  return out;
}

}  // namespace

EncodeResult EncodeSpar(const Image& f, const EncoderConfig& cfg,
                        const IterationObserver& observer) {
  cfg.Validate(f.size());
  const std::size_t target = cfg.TargetCount(f.size());
  Rng rng(cfg.seed);
  EncodeResult result;
  result.method = Method::kSpar;
  Mask mask = Mask::Full(f.width(), f.height());
  std::size_t stored = f.size();
  Image u = f;
  int iteration = 0;
  while (stored > target) {
    std::size_t candidates = static_cast<std::size_t>(
        std::llround(cfg.spar_candidate_fraction * static_cast<double>(stored)));
    candidates = std::clamp<std::size_t>(candidates, 1, stored - 1);
    const auto trial = SampleWithoutReplacement(mask.Indices(), candidates, rng);
    Mask reduced = mask;
    for (std::size_t i : trial) reduced.Set(i, false);
    u = HarmonicInpaint(reduced, f, cfg.solve, &u);

    std::vector<double> local_error(trial.size());
    for (std::size_t k = 0; k < trial.size(); ++k) {
      local_error[k] = std::fabs(f[trial[k]] - u[trial[k]]);
    }
    const std::size_t remove = std::min(
        {static_cast<std::size_t>(cfg.per_iter_pixels), trial.size(), stored - target});
    // Everything else in the trial set goes back into the mask.
    for (std::size_t i : SmallestBy(trial, local_error, remove)) mask.Set(i, false);
    stored -= remove;
    ++iteration;
    result.trace.push_back({iteration, Rmse8(f, u)});
    if (observer) observer(iteration, u, mask);
  }
  result.iterations = iteration;
  result.u_final = HarmonicInpaint(mask, f, cfg.solve, &u);
  result.trace.push_back({iteration, Rmse8(f, result.u_final)});
  result.tonal = Restrict(f, mask);
  result.mask = std::move(mask);
  return result;
}

EncodeResult EncodeDens(const Image& f, const EncoderConfig& cfg,
                        const IterationObserver& observer) {
  cfg.Validate(f.size());
  const std::size_t target = cfg.TargetCount(f.size());
  Rng rng(cfg.seed);
  EncodeResult result;
  result.method = Method::kDens;
  Mask mask(f.width(), f.height());
  {
    // Cold start from the strongest Laplacian response.
    const CriterionField structure(Laplacian(f));
    std::vector<std::size_t> all(f.size());
    std::iota(all.begin(), all.end(), 0);
    mask.Set(TopIndices(structure, all, 1).front());
  }
  std::size_t stored = 1;
  Image u = HarmonicInpaint(mask, f, cfg.solve);
  int iteration = 0;
  while (stored < target) {
    auto free = mask.Complement();
    const std::size_t draw = std::min<std::size_t>(cfg.dens_candidates, free.size());
    const auto candidates = SampleWithoutReplacement(std::move(free), draw, rng);
    std::vector<double> error(candidates.size());
    Mask trial = mask;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      trial.Set(candidates[k]);
      error[k] = Rmse8(f, HarmonicInpaint(trial, f, cfg.solve, &u));
      trial.Set(candidates[k], false);
    }
    const std::size_t add = std::min(
        {static_cast<std::size_t>(cfg.per_iter_pixels), candidates.size(), target - stored});
    for (std::size_t i : SmallestBy(candidates, error, add)) mask.Set(i);
    stored += add;
    u = HarmonicInpaint(mask, f, cfg.solve, &u);
    ++iteration;
    result.trace.push_back({iteration, Rmse8(f, u)});
    if (observer) observer(iteration, u, mask);
  }
  if (result.trace.empty()) result.trace.push_back({0, Rmse8(f, u)});
  result.iterations = iteration;
  result.u_final = std::move(u);
  result.tonal = Restrict(f, mask);
  result.mask = std::move(mask);
  return result;
}

}  // namespace picodec
