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
#include <array>
#include <cmath>

#include "picodec/encoders.h"

namespace picodec {

const char* DenoiseMethodName(DenoiseMethod method) {
  switch (method) {
    case DenoiseMethod::kL2InstaT:
      return "L2-INSTA-T";
    case DenoiseMethod::kL2InstaH:
      return "L2-INSTA-H";
    case DenoiseMethod::kL2IncT:
      return "L2-INC-T";
    case DenoiseMethod::kL2IncH:
      return "L2-INC-H";
  }
  return "?";
}

Image Denoise(const Image& f_noisy, const EncoderConfig& cfg, DenoiseMethod method,
              const IterationObserver& observer) {
  EncoderConfig run = cfg;
  switch (method) {
    case DenoiseMethod::kL2InstaT:
      run.threshold = ThresholdMode::kHard;
      return EncodeL2Insta(f_noisy, run, observer).u_final;
    case DenoiseMethod::kL2InstaH:
      run.threshold = ThresholdMode::kSoftFs;
      return EncodeL2Insta(f_noisy, run, observer).u_final;
    case DenoiseMethod::kL2IncT:
      run.threshold = ThresholdMode::kHard;
      return EncodeL2Inc(f_noisy, run, observer).u_final;
    case DenoiseMethod::kL2IncH:
      run.threshold = ThresholdMode::kSoftLloyd;
      return EncodeL2Inc(f_noisy, run, observer).u_final;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown denoise method");
}

EncoderConfig DenoisePreset(DenoiseMethod method, double sigma) {
  constexpr std::array<double, 4> kSigmas = {0.03, 0.05, 0.1, 0.2};
  constexpr std::array<int, 4> kInstaHardN = {44, 58, 59, 88};
  constexpr std::array<int, 4> kInstaSoftN = {38, 55, 102, 182};
  std::size_t row = 0;
  for (std::size_t k = 1; k < kSigmas.size(); ++k) {
    if (std::fabs(sigma - kSigmas[k]) < std::fabs(sigma - kSigmas[row])) row = k;
  }
  EncoderConfig cfg;
  cfg.alpha = 0.01;
  switch (method) {
    case DenoiseMethod::kL2InstaT:
    case DenoiseMethod::kL2InstaH:
      cfg.density_c = 0.01;
      cfg.iterations_n = method == DenoiseMethod::kL2InstaT ? kInstaHardN[row]
                                                            : kInstaSoftN[row];
      cfg.threshold = method == DenoiseMethod::kL2InstaT ? ThresholdMode::kHard
                                                         : ThresholdMode::kSoftFs;
      break;
    case DenoiseMethod::kL2IncT:
    case DenoiseMethod::kL2IncH:
      cfg.density_c = sigma >= 0.2 ? 0.04 : 0.02;
      cfg.threshold = method == DenoiseMethod::kL2IncT ? ThresholdMode::kHard
                                                       : ThresholdMode::kSoftLloyd;
      break;
  }
  return cfg;
}

}  // namespace picodec
