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

// Experiment plans: run every (density, sigma, method, seed) cell on one
// image and tabulate reconstruction errors against the clean image.
//
// Plan files are line oriented, `key = value`, '#' starts a comment. List
// values are comma separated. Encoder keys may be scoped to one method with
// `key[method-label] = value`.
//
//   image      = camera256.pgm          # relative to the plan file
//   output     = results                # relative to the plan file
//   sigmas     = 0, 0.03, 0.05
//   densities  = 0.1
//   methods    = h1-t, h1-h, l2-insta-t, l2-inc-t
//   seeds      = 1, 2, 3
//   crop       = 128                    # optional centred square crop
//   sweep      = false
//   alpha      = 0.05                   # encoder keys: alpha, iterations,
//   alpha[l2-inc-t] = 0.26              #   fraction, per_iter_pixels,
//   iterations[l2-insta-t] = 3000       #   spar_candidate_fraction,
//                                       #   dens_candidates, lloyd_iterations,
//                                       #   tolerance, max_iterations

#ifndef PICODEC_BENCH_H_
#define PICODEC_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "picodec/encoders.h"
#include "picodec/image.h"

namespace picodec {

// A method label such as "l2-inc-t": the encoder plus its threshold mode.
// Suffix -t is hard thresholding; -h is soft (error diffusion for H1 and
// L2-INSTA, Lloyd stippling for L2-INC).
struct MethodSpec {
  std::string label;
  Method method = Method::kH1;
  ThresholdMode threshold = ThresholdMode::kHard;

  bool operator==(const MethodSpec&) const = default;
};

std::optional<MethodSpec> ParseMethodSpec(std::string_view label);

struct ExperimentPlan {
  std::string image_path;
  std::string output_dir;
  std::vector<double> sigmas;
  std::vector<double> densities;
  std::vector<MethodSpec> methods;
  std::vector<std::uint64_t> seeds;
  int crop = 0;
  bool sweep = false;
  // Encoder settings: unscoped keys, then keys scoped by method label.
  std::map<std::string, std::string> encoder_keys;
  std::map<std::string, std::map<std::string, std::string>> scoped_keys;

  // Throws kInvalidArgument on empty lists or out-of-range values.
  void Validate() const;
  // Settings for one method, before density, seed and threshold are set.
  EncoderConfig ConfigFor(const MethodSpec& spec) const;
};

// base_dir resolves relative image and output paths.
ExperimentPlan ParsePlan(std::string_view text, const std::string& base_dir = "");
ExperimentPlan LoadPlan(const std::string& path);

struct CellResult {
  MethodSpec spec;
  double sigma = 0.0;
  double density = 0.0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  int iterations_n = 0;  // encoder setting (L2-INSTA)
  int iterations = 0;    // iterations actually run
  std::size_t stored = 0;
  std::size_t payload_bytes = 0;
  double decode_rmse8 = 0.0;  // clean image vs decoded payload
  double encode_rmse8 = 0.0;  // clean image vs last encoding reconstruction
  std::string error;          // empty on success; rmse values are NaN otherwise
};

struct BenchOptions {
  int jobs = 1;
  bool sweep = false;  // OR-ed with the plan's own setting
  std::ostream* log = nullptr;
};

// Runs every cell, writes CSVs, payloads and errors.log to the plan's output
// directory and returns the cells in plan order (density, sigma, method,
// seed). A failing cell is recorded with NaN errors and does not stop the run.
std::vector<CellResult> RunPlan(const ExperimentPlan& plan, const BenchOptions& options);

// Single cell, no file output. Exposed for tests.
CellResult RunCell(const Image& clean, const ExperimentPlan& plan, const MethodSpec& spec,
                   double sigma, double density, std::uint64_t seed, bool sweep,
                   std::vector<std::uint8_t>* payload = nullptr);

// Applies one encoder key to cfg; throws kInvalidArgument on unknown keys or
// unparsable values.
void ApplyEncoderKey(EncoderConfig& cfg, const std::string& key, const std::string& value);

// Fixed-point rendering used in every CSV ("nan" for NaN).
std::string FormatValue(double v);

}  // namespace picodec

#endif  // PICODEC_BENCH_H_
