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

// Mask encoders.
//
// The iterative encoders couple mask selection with the heat step
//   u^{n+1} - alpha Lap(u^{n+1}) = u^n  off K_n,   u^{n+1} = h on K_n,
// where h is the input image f (base model) or u^n (tonal variant, L2-INC-T-E).
//
//   L2-INSTA    rebuilds K_n from scratch every iteration, N iterations.
//   L2-DEC      starts from K = D and removes the lowest-criterion pixels.
//   L2-INC      starts from K = {} and adds the highest-criterion pixels.
//   L2-INC-T-E  L2-INC with stored values u^n and criterion |Lap(u^n)|.
//   H1          one-shot thresholding of |Lap(f)|.
//   SPAR/DENS   randomized sparsification and densification baselines
//               driven by harmonic inpainting errors.
//
// Pixel budgets are floor(c * |D|). Iterative loops clamp their last batch so
// the final mask has exactly that many pixels (Floyd-Steinberg masks are the
// exception: their count is whatever the dither produces).

#ifndef PICODEC_ENCODERS_H_
#define PICODEC_ENCODERS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "picodec/diffusion.h"
#include "picodec/image.h"

namespace picodec {

// Values are the payload method ids and must not be renumbered.
enum class Method : std::uint8_t {
  kH1 = 0,
  kL2Insta = 1,
  kL2Dec = 2,
  kL2Inc = 3,
  kL2IncTE = 4,
  kSpar = 5,
  kDens = 6,
};

enum class ThresholdMode { kHard, kSoftFs, kSoftLloyd };

const char* MethodName(Method method);
const char* ThresholdModeName(ThresholdMode mode);

struct EncoderConfig {
  double alpha = 0.05;       // heat step size
  double density_c = 0.1;    // target mask density in (0, 1)
  int iterations_n = 1;      // L2-INSTA iteration count
  // Per-iteration add/remove fraction of |D| for L2-DEC / L2-INC. When unset
  // the batch is per_iter_pixels.
  std::optional<double> fraction_q;
  ThresholdMode threshold = ThresholdMode::kHard;
  std::uint64_t seed = 0;
  double spar_candidate_fraction = 0.02;
  int per_iter_pixels = 50;
  int dens_candidates = 100;
  int lloyd_iterations = 30;
  SolveControls solve;

  // Throws kInvalidArgument when a field is out of range for an image with
  // pixel_count pixels.
  void Validate(std::size_t pixel_count) const;
  std::size_t TargetCount(std::size_t pixel_count) const;
  std::size_t BatchSize(std::size_t pixel_count) const;
};

struct TracePoint {
  int iteration;
  double rmse8;  // against the encoder input
};

struct EncodeResult {
  Method method = Method::kH1;
  Mask mask;
  Image tonal;    // stored values on the mask, 0 elsewhere
  Image u_final;  // last encoding reconstruction
  std::vector<TracePoint> trace;
  int iterations = 0;
};

// Called after every iteration with the iteration number (1-based), the
// current reconstruction and the mask used to produce it.
using IterationObserver =
    std::function<void(int iteration, const Image& u, const Mask& mask)>;

EncodeResult EncodeL2Insta(const Image& f, const EncoderConfig& cfg,
                           const IterationObserver& observer = {});
EncodeResult EncodeL2Dec(const Image& f, const EncoderConfig& cfg,
                         const IterationObserver& observer = {});
EncodeResult EncodeL2Inc(const Image& f, const EncoderConfig& cfg,
                         const IterationObserver& observer = {});
EncodeResult EncodeL2IncTE(const Image& f, const EncoderConfig& cfg,
                           const IterationObserver& observer = {});
EncodeResult EncodeH1(const Image& f, const EncoderConfig& cfg);
EncodeResult EncodeSpar(const Image& f, const EncoderConfig& cfg,
                        const IterationObserver& observer = {});
EncodeResult EncodeDens(const Image& f, const EncoderConfig& cfg,
                        const IterationObserver& observer = {});

EncodeResult Encode(Method method, const Image& f, const EncoderConfig& cfg,
                    const IterationObserver& observer = {});

// Reconstruction for L2-INSTA payloads: u0 = tonal on the mask and 0
// elsewhere, advanced by a single implicit step of size n * alpha.
Image DecodeL2Insta(const Mask& mask, const Image& tonal, double alpha, int n,
                    const SolveControls& ctl = {});

enum class DenoiseMethod { kL2InstaT, kL2InstaH, kL2IncT, kL2IncH };

const char* DenoiseMethodName(DenoiseMethod method);

// Runs the encoder behind `method` (its threshold mode overrides
// cfg.threshold) and returns the last encoding reconstruction.
Image Denoise(const Image& f_noisy, const EncoderConfig& cfg, DenoiseMethod method,
              const IterationObserver& observer = {});

// Reference denoising settings: alpha = 0.01, 1% of the pixels for L2-INSTA,
// 2% for L2-INC (4% when sigma >= 0.2). L2-INSTA iteration counts follow the
// tuned values for sigma in {0.03, 0.05, 0.1, 0.2}, taking the
// nearest tabulated sigma.
EncoderConfig DenoisePreset(DenoiseMethod method, double sigma);

}  // namespace picodec

#endif  // PICODEC_ENCODERS_H_
