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
#include "picodec/encoders.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "picodec/image_ops.h"
#include "picodec/mask_select.h"

namespace picodec {

const char* MethodName(Method method) {
  switch (method) {
    case Method::kH1:
      return "H1";
    case Method::kL2Insta:
      return "L2-INSTA";
    case Method::kL2Dec:
      return "L2-DEC";
    case Method::kL2Inc:
      return "L2-INC";
    case Method::kL2IncTE:
      return "L2-INC-T-E";
    case Method::kSpar:
      return "SPAR";
    case Method::kDens:
      return "DENS";
  }
  return "?";
}

const char* ThresholdModeName(ThresholdMode mode) {
  switch (mode) {
    case ThresholdMode::kHard:
      return "hard";
    case ThresholdMode::kSoftFs:
      return "fs";
    case ThresholdMode::kSoftLloyd:
      return "lloyd";
  }
  return "?";
}

namespace {

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace

void EncoderConfig::Validate(std::size_t pixel_count) const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) Invalid("alpha must be positive");
  if (!(density_c > 0.0 && density_c < 1.0)) Invalid("density must be in (0, 1)");
  if (iterations_n < 1) Invalid("iterations must be >= 1");
  if (fraction_q) {
    if (!(*fraction_q > 0.0 && *fraction_q < 1.0)) {
      Invalid("fraction q must be in (0, 1)");
    }
    if (*fraction_q * static_cast<double>(pixel_count) < 1.0) {
      Invalid("fraction q selects less than one pixel per iteration");
    }
  }
  if (!(spar_candidate_fraction > 0.0 && spar_candidate_fraction <= 1.0)) {
    Invalid("spar candidate fraction must be in (0, 1]");
  }
  if (per_iter_pixels < 1) Invalid("per-iteration pixel count must be >= 1");
  if (dens_candidates < 1) Invalid("densification candidate count must be >= 1");
  if (lloyd_iterations < 0) Invalid("lloyd iterations must be >= 0");
  if (TargetCount(pixel_count) < 1) {
    Invalid("density selects no pixels on a " + std::to_string(pixel_count) +
            "-pixel image");
  }
}

std::size_t EncoderConfig::TargetCount(std::size_t pixel_count) const {
  return static_cast<std::size_t>(std::floor(density_c * static_cast<double>(pixel_count)));
}

std::size_t EncoderConfig::BatchSize(std::size_t pixel_count) const {
  if (fraction_q) {
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(*fraction_q * pixel_count)));
  }
  return static_cast<std::size_t>(per_iter_pixels);
}

namespace {

Image Restrict(const Image& values, const Mask& mask) {
  Image out(values.width(), values.height());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask.Test(i)) out[i] = values[i];
  }
  return out;
}

Mask MaskOf(int width, int height, const std::vector<std::size_t>& indices) {
  Mask mask(width, height);
  for (std::size_t i : indices) mask.Set(i);
  return mask;
}

// Mask of `count` pixels over the whole grid.
Mask SelectOverDomain(const CriterionField& field, std::size_t count,
                      const EncoderConfig& cfg, std::uint64_t seed) {
  switch (cfg.threshold) {
    case ThresholdMode::kHard:
      return HardThresholdSelect(field, count);
    case ThresholdMode::kSoftFs:
      return FloydSteinbergDither(
          field, static_cast<double>(count) / static_cast<double>(field.size()));
    case ThresholdMode::kSoftLloyd:
      return LloydStipple(field, count, {cfg.lloyd_iterations, seed, nullptr});
  }
  return {};
}

void Record(EncodeResult& result, int iteration, const Image& f, const Image& u,
            const Mask& mask, const IterationObserver& observer) {
  result.trace.push_back({iteration, Rmse8(f, u)});
  result.iterations = iteration;
  if (observer) observer(iteration, u, mask);
}

// Shared loop of L2-INC and its tonal variant.
EncodeResult EncodeIncremental(const Image& f, const EncoderConfig& cfg, bool tonal,
                               const IterationObserver& observer) {
  cfg.Validate(f.size());
  if (cfg.threshold == ThresholdMode::kSoftFs) {
    Invalid("incremental encoders support hard or lloyd thresholding; error "
            "diffusion is biased for small batches");
  }
  const std::size_t target = cfg.TargetCount(f.size());
  const std::size_t batch = cfg.BatchSize(f.size());
  EncodeResult result;
  result.method = tonal ? Method::kL2IncTE : Method::kL2Inc;
  Mask mask(f.width(), f.height());
  std::size_t stored = 0;
  Image u = f;
  int iteration = 0;
  while (stored < target) {
    const std::size_t add = std::min(batch, target - stored);
    const CriterionField field = tonal ? CriterionE(u) : CriterionG(u, f, cfg.alpha);
    if (cfg.threshold == ThresholdMode::kHard) {
      const auto free = mask.Complement();
      for (std::size_t i : TopIndices(field, free, add)) mask.Set(i);
    } else {
      const Mask picked = LloydStipple(
          field, add, {cfg.lloyd_iterations, cfg.seed + static_cast<std::uint64_t>(iteration), &mask});
      for (std::size_t i = 0; i < picked.size(); ++i) {
        if (picked.Test(i)) mask.Set(i);
      }
    }
    stored += add;
    u = ImplicitStep(u, mask, tonal ? u : f, cfg.alpha, cfg.solve);
    Record(result, ++iteration, f, u, mask, observer);
  }
  result.tonal = Restrict(tonal ? u : f, mask);
  result.mask = std::move(mask);
  result.u_final = std::move(u);
  return result;
}

}  // namespace

EncodeResult EncodeL2Insta(const Image& f, const EncoderConfig& cfg,
                           const IterationObserver& observer) {
  cfg.Validate(f.size());
  const std::size_t target = cfg.TargetCount(f.size());
  EncodeResult result;
  result.method = Method::kL2Insta;
  Image u = f;
  Mask mask;
  for (int n = 0; n < cfg.iterations_n; ++n) {
    // A fresh mask every iteration; nothing carries over from K_{n-1}.
    mask = SelectOverDomain(CriterionG(u, f, cfg.alpha), target, cfg,
                            cfg.seed + static_cast<std::uint64_t>(n));
    u = ImplicitStep(u, mask, f, cfg.alpha, cfg.solve);
    Record(result, n + 1, f, u, mask, observer);
  }
  result.tonal = Restrict(f, mask);
  result.mask = std::move(mask);
  result.u_final = std::move(u);
  return result;
}

EncodeResult EncodeL2Dec(const Image& f, const EncoderConfig& cfg,
                         const IterationObserver& observer) {
  cfg.Validate(f.size());
  if (cfg.threshold != ThresholdMode::kHard) {
    Invalid("L2-DEC supports hard thresholding only");
  }
  const std::size_t target = cfg.TargetCount(f.size());
  const std::size_t batch = cfg.BatchSize(f.size());
  EncodeResult result;
  result.method = Method::kL2Dec;
  Mask mask = Mask::Full(f.width(), f.height());
  std::size_t stored = f.size();
  Image u = f;
  int iteration = 0;
  while (stored > target) {
    const std::size_t remove = std::min(batch, stored - target);
    const auto kept = TopIndices(CriterionG(u, f, cfg.alpha), mask.Indices(),
                                 stored - remove);
    mask = MaskOf(f.width(), f.height(), kept);
    stored = kept.size();
    u = ImplicitStep(u, mask, f, cfg.alpha, cfg.solve);
    Record(result, ++iteration, f, u, mask, observer);
  }
  result.tonal = Restrict(f, mask);
  result.mask = std::move(mask);
  result.u_final = std::move(u);
  return result;
}

EncodeResult EncodeL2Inc(const Image& f, const EncoderConfig& cfg,
                         const IterationObserver& observer) {
  return EncodeIncremental(f, cfg, /*tonal=*/false, observer);
}

EncodeResult EncodeL2IncTE(const Image& f, const EncoderConfig& cfg,
                           const IterationObserver& observer) {
  return EncodeIncremental(f, cfg, /*tonal=*/true, observer);
}

EncodeResult EncodeH1(const Image& f, const EncoderConfig& cfg) {
  cfg.Validate(f.size());
  EncodeResult result;
  result.method = Method::kH1;
  result.mask = SelectOverDomain(CriterionField(Laplacian(f)),
                                 cfg.TargetCount(f.size()), cfg, cfg.seed);
  result.tonal = Restrict(f, result.mask);
  result.u_final = HarmonicInpaint(result.mask, f, cfg.solve);
  result.trace.push_back({0, Rmse8(f, result.u_final)});
  return result;
}

EncodeResult Encode(Method method, const Image& f, const EncoderConfig& cfg,
                    const IterationObserver& observer) {
  switch (method) {
    case Method::kH1:
      return EncodeH1(f, cfg);
    case Method::kL2Insta:
      return EncodeL2Insta(f, cfg, observer);
    case Method::kL2Dec:
      return EncodeL2Dec(f, cfg, observer);
    case Method::kL2Inc:
      return EncodeL2Inc(f, cfg, observer);
    case Method::kL2IncTE:
      return EncodeL2IncTE(f, cfg, observer);
    case Method::kSpar:
      return EncodeSpar(f, cfg, observer);
    case Method::kDens:
      return EncodeDens(f, cfg, observer);
  }
  Invalid("unknown method");
}

Image DecodeL2Insta(const Mask& mask, const Image& tonal, double alpha, int n,
                    const SolveControls& ctl) {
  RequireSameShape(mask, tonal, "decode_l2_insta");
  if (mask.Count() == 0) {
    throw Error(ErrorCode::kUnderdetermined, "underdetermined: empty mask");
  }
  if (n < 1) Invalid("decode needs at least one encoding iteration");
  const Image start = Restrict(tonal, mask);
  return ImplicitStep(start, mask, tonal, alpha * n, ctl);
}

}  // namespace picodec
