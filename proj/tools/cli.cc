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

#include "cli.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include "picodec/bench.h"
#include "picodec/codec.h"
#include "picodec/diffusion.h"
#include "picodec/encoders.h"
#include "picodec/error.h"
#include "picodec/image_ops.h"
#include "picodec/pgm.h"

namespace picodec {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string Fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// True when the label itself fixes the threshold mode (h1-t, l2-inc-h-e, ...).
bool LabelFixesThreshold(const std::string& label) {
  return EndsWith(label, "-t") || EndsWith(label, "-h") || EndsWith(label, "-t-e") ||
         EndsWith(label, "-h-e");
}

ThresholdMode ParseThreshold(const std::string& name) {
  if (name == "hard") return ThresholdMode::kHard;
  if (name == "fs") return ThresholdMode::kSoftFs;
  if (name == "lloyd") return ThresholdMode::kSoftLloyd;
  throw UsageError("unknown threshold '" + name + "'");
}

bool SupportsThreshold(Method m, ThresholdMode t) {
  switch (m) {
    case Method::kH1:
    case Method::kL2Insta:
      return true;
    case Method::kL2Inc:
    case Method::kL2IncTE:
      return t != ThresholdMode::kSoftFs;
    default:
      return t == ThresholdMode::kHard;
  }
}

struct EncodeArgs {
  std::string input;
  std::string method;
  double density = 0.1;
  std::optional<double> alpha;
  std::optional<int> iterations;
  std::optional<double> fraction;
  std::optional<std::string> threshold;
  std::uint64_t seed = 0;
  std::string output;
  std::string preview;
  std::string trace;
  std::string mask_output;
  double sigma = 0.0;
  std::uint64_t noise_seed = 0;
};

struct DecodeArgs {
  std::string input;
  std::string output;
};

struct DenoiseArgs {
  std::string input;
  double sigma = 0.05;
  std::uint64_t noise_seed = 0;
  std::string method = "l2-insta-t";
  std::optional<double> alpha;
  std::optional<double> density;
  std::optional<int> iterations;
  double eta = 1.2;
  int steps = 10;
  std::string output;
  std::string baseline_output;
  std::string noisy_output;
};

struct BenchArgs {
  std::string plan;
  std::string output_dir;
  int jobs = 1;
  bool sweep = false;
  bool quiet = false;
};

int RunEncode(const EncodeArgs& a, std::ostream& out) {
  const auto spec = ParseMethodSpec(a.method);
  if (!spec) throw UsageError("unknown method '" + a.method + "'");
  if (!(a.density > 0.0 && a.density < 1.0)) {
    throw UsageError("--density must be in (0, 1)");
  }
  if (a.iterations && spec->method != Method::kL2Insta) {
    throw UsageError("--iterations applies to l2-insta only");
  }
  if (a.fraction && spec->method != Method::kL2Dec && spec->method != Method::kL2Inc &&
      spec->method != Method::kL2IncTE) {
    throw UsageError("--fraction applies to l2-dec, l2-inc and l2-inc-t-e only");
  }
  if (a.alpha && !(*a.alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (a.sigma < 0.0) throw UsageError("--sigma must be >= 0");

  EncoderConfig cfg;
  cfg.threshold = spec->threshold;
  if (a.threshold) {
    const ThresholdMode t = ParseThreshold(*a.threshold);
    if (LabelFixesThreshold(a.method) && t != spec->threshold) {
      throw UsageError("--threshold " + *a.threshold + " conflicts with method " + a.method);
    }
    cfg.threshold = t;
  }
  if (!SupportsThreshold(spec->method, cfg.threshold)) {
    throw UsageError(std::string(MethodName(spec->method)) + " does not support " +
                     ThresholdModeName(cfg.threshold) + " thresholding");
  }
  cfg.density_c = a.density;
  if (a.alpha) cfg.alpha = *a.alpha;
  if (a.iterations) cfg.iterations_n = *a.iterations;
  if (a.fraction) cfg.fraction_q = *a.fraction;
  cfg.seed = a.seed;

  Image f = LoadPgm(a.input);
  if (a.sigma > 0.0) f = AddGaussianNoise(f, {a.sigma, a.noise_seed});
  try {
    cfg.Validate(f.size());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const EncodeResult result = Encode(spec->method, f, cfg);
  const std::vector<std::uint8_t> bytes = Serialize(result, cfg);
  WritePayloadFile(bytes, a.output);
  if (!a.preview.empty()) SavePgm(result.u_final, a.preview);
  if (!a.mask_output.empty()) SaveMaskPgm(result.mask, a.mask_output);
  if (!a.trace.empty()) {
    std::ofstream csv(a.trace);
    if (!csv) throw Error(ErrorCode::kIo, "cannot write " + a.trace);
    csv << "iteration,rmse8\n";
    for (const TracePoint& p : result.trace) csv << p.iteration << "," << Fixed(p.rmse8, 6) << "\n";
    if (!csv) throw Error(ErrorCode::kIo, "write failed: " + a.trace);
  }
  out << "method=" << a.method << " stored=" << result.mask.Count()
      << " density=" << Fixed(result.mask.Density())
      << " iterations=" << result.iterations
      << " rmse8=" << Fixed(Rmse8(f, result.u_final))
      << " bytes=" << bytes.size() << "\n";
  return kExitOk;
}

int RunDecode(const DecodeArgs& a, std::ostream& out) {
  const Payload payload = Deserialize(ReadPayloadFile(a.input));
  const Image u = Decode(payload);
  SavePgm(u, a.output);
  out << "method=" << MethodName(payload.method) << " width=" << u.width()
      << " height=" << u.height() << " stored=" << payload.mask.Count() << "\n";
  return kExitOk;
}

int RunDenoise(const DenoiseArgs& a, std::ostream& out) {
  DenoiseMethod method;
  if (a.method == "l2-insta-t") {
    method = DenoiseMethod::kL2InstaT;
  } else if (a.method == "l2-insta-h") {
    method = DenoiseMethod::kL2InstaH;
  } else if (a.method == "l2-inc-t") {
    method = DenoiseMethod::kL2IncT;
  } else if (a.method == "l2-inc-h") {
    method = DenoiseMethod::kL2IncH;
  } else {
    throw UsageError("unknown denoising method '" + a.method + "'");
  }
  if (a.sigma < 0.0) throw UsageError("--sigma must be >= 0");
  if (!(a.eta >= 0.0)) throw UsageError("--eta must be >= 0");
  if (a.steps < 1) throw UsageError("--steps must be >= 1");
  if (a.iterations && method != DenoiseMethod::kL2InstaT &&
      method != DenoiseMethod::kL2InstaH) {
    throw UsageError("--iterations applies to l2-insta only");
  }

  EncoderConfig cfg = DenoisePreset(method, a.sigma);
  if (a.alpha) cfg.alpha = *a.alpha;
  if (a.density) cfg.density_c = *a.density;
  if (a.iterations) cfg.iterations_n = *a.iterations;

  const Image clean = LoadPgm(a.input);
  const Image noisy = AddGaussianNoise(clean, {a.sigma, a.noise_seed});
  try {
    cfg.Validate(clean.size());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Image denoised = Denoise(noisy, cfg, method);
  const Image filtered = a.eta > 0.0 ? LinearDiffusionFilter(noisy, a.eta, a.steps) : noisy;
  if (!a.output.empty()) SavePgm(denoised, a.output);
  if (!a.baseline_output.empty()) SavePgm(filtered, a.baseline_output);
  if (!a.noisy_output.empty()) SavePgm(noisy, a.noisy_output);
  out << "sigma=" << Fixed(a.sigma, 3) << " method=" << a.method
      << " noisy_rmse8=" << Fixed(Rmse8(clean, noisy))
      << " denoised_rmse8=" << Fixed(Rmse8(clean, denoised))
      << " filter_rmse8=" << Fixed(Rmse8(clean, filtered)) << "\n";
  return kExitOk;
}

int RunBench(const BenchArgs& a, std::ostream& out) {
  if (a.jobs < 1) throw UsageError("--jobs must be >= 1");
  ExperimentPlan plan;
  try {
    plan = LoadPlan(a.plan);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw UsageError(e.what());
  }
  if (!a.output_dir.empty()) plan.output_dir = a.output_dir;
  BenchOptions options;
  options.jobs = a.jobs;
  options.sweep = a.sweep;
  options.log = a.quiet ? nullptr : &out;
  const auto cells = RunPlan(plan, options);
  std::size_t failed = 0;
  for (const auto& c : cells) failed += c.error.empty() ? 0 : 1;
  out << cells.size() << " cells, " << failed << " failed\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"picodec: sparse-mask diffusion image codec"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode a PGM image into a .pic payload");
  encode->add_option("--input,-i", enc.input, "Input PGM")->required();
  encode->add_option("--method,-m", enc.method,
                     "h1[-t|-h], l2-insta[-t|-h], l2-dec, l2-inc[-t|-h], "
                     "l2-inc-t-e, l2-inc-h-e, spar, dens")
      ->required();
  encode->add_option("--density,-c", enc.density, "Fraction of stored pixels, in (0, 1)")
      ->capture_default_str();
  encode->add_option("--alpha", enc.alpha, "Heat step size");
  encode->add_option("--iterations", enc.iterations, "L2-INSTA iteration count");
  encode->add_option("--fraction", enc.fraction, "Per-iteration fraction for l2-dec / l2-inc");
  encode->add_option("--threshold", enc.threshold, "hard, fs or lloyd");
  encode->add_option("--seed", enc.seed, "Seed for randomized selection")->capture_default_str();
  encode->add_option("--output,-o", enc.output, "Output .pic payload")->required();
  encode->add_option("--preview", enc.preview, "Write the encoder reconstruction as PGM");
  encode->add_option("--trace", enc.trace, "Write per-iteration errors as CSV");
  encode->add_option("--mask-output", enc.mask_output, "Write the mask as PGM");
  encode->add_option("--sigma", enc.sigma, "Add Gaussian noise before encoding");
  encode->add_option("--noise-seed", enc.noise_seed, "Noise seed");

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Reconstruct a PGM image from a .pic payload");
  decode->add_option("--input,-i", dec.input, "Input .pic")->required();
  decode->add_option("--output,-o", dec.output, "Output PGM")->required();

  DenoiseArgs den;
  auto* denoise = app.add_subcommand(
      "denoise", "Add noise to a clean image, denoise it and compare with linear diffusion");
  denoise->add_option("--input,-i", den.input, "Clean PGM")->required();
  denoise->add_option("--sigma", den.sigma, "Noise level")->capture_default_str();
  denoise->add_option("--noise-seed", den.noise_seed, "Noise seed")->capture_default_str();
  denoise->add_option("--method,-m", den.method, "l2-insta-t, l2-insta-h, l2-inc-t, l2-inc-h")
      ->capture_default_str();
  denoise->add_option("--alpha", den.alpha, "Override the preset step size");
  denoise->add_option("--density,-c", den.density, "Override the preset density");
  denoise->add_option("--iterations", den.iterations, "Override the preset L2-INSTA N");
  denoise->add_option("--eta", den.eta, "Linear diffusion stopping time")->capture_default_str();
  denoise->add_option("--steps", den.steps, "Implicit steps for the baseline")
      ->capture_default_str();
  denoise->add_option("--output,-o", den.output, "Denoised PGM");
  denoise->add_option("--baseline-output", den.baseline_output, "Linear diffusion PGM");
  denoise->add_option("--noisy-output", den.noisy_output, "Noisy input PGM");

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "Run an experiment plan");
  bench->add_option("--plan,-p", ben.plan, "Plan file")->required();
  bench->add_option("--output-dir", ben.output_dir, "Override the plan's output directory");
  bench->add_option("--jobs,-j", ben.jobs, "Concurrent cells")->capture_default_str();
  bench->add_flag("--sweep", ben.sweep, "Search alpha (and N for l2-insta) per cell");
  bench->add_flag("--quiet,-q", ben.quiet, "No per-cell log");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encode) return RunEncode(enc, out);
    if (*decode) return RunDecode(dec, out);
    if (*denoise) return RunDenoise(den, out);
    return RunBench(ben, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace picodec
