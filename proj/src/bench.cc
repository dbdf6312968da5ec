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

#include "picodec/bench.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "picodec/codec.h"
#include "picodec/image_ops.h"
#include "picodec/pgm.h"

namespace picodec {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void BadPlan(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, "plan: " + message);
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitList(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    std::string item = Trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double ParseDouble(const std::string& s, const std::string& key) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    BadPlan("'" + s + "' is not a number (key " + key + ")");
  }
  return v;
}

long long ParseInt(const std::string& s, const std::string& key) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    BadPlan("'" + s + "' is not an integer (key " + key + ")");
  }
  return v;
}

bool ParseBool(const std::string& s, const std::string& key) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  BadPlan("'" + s + "' is not a boolean (key " + key + ")");
}

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

std::string Compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

bool HasStepSize(Method m) {
  return m == Method::kL2Insta || m == Method::kL2Dec || m == Method::kL2Inc ||
         m == Method::kL2IncTE;
}

Image CentreCrop(const Image& img, int side) {
  if (side <= 0 || (side >= img.width() && side >= img.height())) return img;
  const int w = std::min(side, img.width());
  const int h = std::min(side, img.height());
  const int x0 = (img.width() - w) / 2;
  const int y0 = (img.height() - h) / 2;
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.at(x, y) = img.at(x0 + x, y0 + y);
  }
  return out;
}

}  // namespace

std::optional<MethodSpec> ParseMethodSpec(std::string_view label) {
  struct Entry {
    const char* label;
    Method method;
    ThresholdMode threshold;
  };
  static constexpr Entry kEntries[] = {
      {"h1", Method::kH1, ThresholdMode::kHard},
      {"h1-t", Method::kH1, ThresholdMode::kHard},
      {"h1-h", Method::kH1, ThresholdMode::kSoftFs},
      {"l2-insta", Method::kL2Insta, ThresholdMode::kHard},
      {"l2-insta-t", Method::kL2Insta, ThresholdMode::kHard},
      {"l2-insta-h", Method::kL2Insta, ThresholdMode::kSoftFs},
      {"l2-dec", Method::kL2Dec, ThresholdMode::kHard},
      {"l2-dec-t", Method::kL2Dec, ThresholdMode::kHard},
      {"l2-inc", Method::kL2Inc, ThresholdMode::kHard},
      {"l2-inc-t", Method::kL2Inc, ThresholdMode::kHard},
      {"l2-inc-h", Method::kL2Inc, ThresholdMode::kSoftLloyd},
      {"l2-inc-t-e", Method::kL2IncTE, ThresholdMode::kHard},
      {"l2-inc-h-e", Method::kL2IncTE, ThresholdMode::kSoftLloyd},
      {"spar", Method::kSpar, ThresholdMode::kHard},
      {"dens", Method::kDens, ThresholdMode::kHard},
  };
  for (const Entry& e : kEntries) {
    if (label == e.label) return MethodSpec{e.label, e.method, e.threshold};
  }
  return std::nullopt;
}

void ApplyEncoderKey(EncoderConfig& cfg, const std::string& key,
                     const std::string& value) {
  if (key == "alpha") {
    cfg.alpha = ParseDouble(value, key);
  } else if (key == "iterations") {
    cfg.iterations_n = static_cast<int>(ParseInt(value, key));
  } else if (key == "fraction") {
    cfg.fraction_q = ParseDouble(value, key);
  } else if (key == "per_iter_pixels") {
    cfg.per_iter_pixels = static_cast<int>(ParseInt(value, key));
  } else if (key == "spar_candidate_fraction") {
    cfg.spar_candidate_fraction = ParseDouble(value, key);
  } else if (key == "dens_candidates") {
    cfg.dens_candidates = static_cast<int>(ParseInt(value, key));
  } else if (key == "lloyd_iterations") {
    cfg.lloyd_iterations = static_cast<int>(ParseInt(value, key));
  } else if (key == "tolerance") {
    cfg.solve.tolerance = ParseDouble(value, key);
  } else if (key == "max_iterations") {
    cfg.solve.max_iterations = static_cast<int>(ParseInt(value, key));
  } else {
    BadPlan("unknown key '" + key + "'");
  }
}

ExperimentPlan ParsePlan(std::string_view text, const std::string& base_dir) {
  ExperimentPlan plan;
  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      BadPlan("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (const auto open = key.find('['); open != std::string::npos) {
      if (key.back() != ']') BadPlan("line " + std::to_string(line_no) + ": bad scope");
      const std::string label = key.substr(open + 1, key.size() - open - 2);
      const std::string base = Trim(std::string_view(key).substr(0, open));
      if (!ParseMethodSpec(label)) BadPlan("unknown method '" + label + "'");
      EncoderConfig probe;
      ApplyEncoderKey(probe, base, value);
      plan.scoped_keys[label][base] = value;
      continue;
    }
    // A repeated key replaces the earlier value.
    if (key == "image") {
      plan.image_path = Resolve(base_dir, value);
    } else if (key == "output") {
      plan.output_dir = Resolve(base_dir, value);
    } else if (key == "sigmas") {
      plan.sigmas.clear();
      for (const auto& s : SplitList(value)) plan.sigmas.push_back(ParseDouble(s, key));
    } else if (key == "densities") {
      plan.densities.clear();
      for (const auto& s : SplitList(value)) plan.densities.push_back(ParseDouble(s, key));
    } else if (key == "methods") {
      plan.methods.clear();
      for (const auto& s : SplitList(value)) {
        const auto spec = ParseMethodSpec(s);
        if (!spec) BadPlan("unknown method '" + s + "'");
        plan.methods.push_back(*spec);
      }
    } else if (key == "seeds") {
      plan.seeds.clear();
      for (const auto& s : SplitList(value)) {
        const long long seed = ParseInt(s, key);
        if (seed < 0) BadPlan("seeds must be nonnegative");
        plan.seeds.push_back(static_cast<std::uint64_t>(seed));
      }
    } else if (key == "crop") {
      plan.crop = static_cast<int>(ParseInt(value, key));
    } else if (key == "sweep") {
      plan.sweep = ParseBool(value, key);
    } else {
      EncoderConfig probe;
      ApplyEncoderKey(probe, key, value);
      plan.encoder_keys[key] = value;
    }
  }
  plan.Validate();
  return plan;
}

ExperimentPlan LoadPlan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open plan " + path);
  std::stringstream text;
  text << in.rdbuf();
  return ParsePlan(text.str(), fs::path(path).parent_path().string());
}

void ExperimentPlan::Validate() const {
  if (image_path.empty()) BadPlan("missing image");
  if (sigmas.empty()) BadPlan("no sigmas");
  if (densities.empty()) BadPlan("no densities");
  if (methods.empty()) BadPlan("no methods");
  if (seeds.empty()) BadPlan("no seeds");
  for (double s : sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) BadPlan("sigma must be >= 0");
  }
  for (double c : densities) {
    if (!(c > 0.0 && c < 1.0)) BadPlan("density must be in (0, 1)");
  }
  if (crop < 0) BadPlan("crop must be >= 0");
}

EncoderConfig ExperimentPlan::ConfigFor(const MethodSpec& spec) const {
  EncoderConfig cfg;
  for (const auto& [key, value] : encoder_keys) ApplyEncoderKey(cfg, key, value);
  if (const auto it = scoped_keys.find(spec.label); it != scoped_keys.end()) {
    for (const auto& [key, value] : it->second) ApplyEncoderKey(cfg, key, value);
  }
  cfg.threshold = spec.threshold;
  return cfg;
}

std::string FormatValue(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

namespace {

CellResult RunConfigured(const Image& clean, const Image& noisy, const MethodSpec& spec,
                         const EncoderConfig& cfg, std::vector<std::uint8_t>* payload) {
  CellResult cell;
  cell.spec = spec;
  cell.alpha = cfg.alpha;
  cell.iterations_n = spec.method == Method::kL2Insta ? cfg.iterations_n : 0;
  const EncodeResult result = Encode(spec.method, noisy, cfg);
  std::vector<std::uint8_t> bytes = Serialize(result, cfg);
  const Image decoded = Decode(Deserialize(bytes), cfg.solve);
  cell.iterations = result.iterations;
  cell.stored = result.mask.Count();
  cell.payload_bytes = bytes.size();
  cell.decode_rmse8 = Rmse8(clean, decoded);
  cell.encode_rmse8 = Rmse8(clean, result.u_final);
  if (payload) *payload = std::move(bytes);
  return cell;
}

// Log-spaced step sizes from 0.01 to 2.5.
std::vector<double> SweepAlphas() {
  constexpr int kPoints = 8;
  std::vector<double> out;
  for (int k = 0; k < kPoints; ++k) {
    out.push_back(0.01 * std::pow(250.0, static_cast<double>(k) / (kPoints - 1)));
  }
  return out;
}

}  // namespace

CellResult RunCell(const Image& clean, const ExperimentPlan& plan, const MethodSpec& spec,
                   double sigma, double density, std::uint64_t seed, bool sweep,
                   std::vector<std::uint8_t>* payload) {
  CellResult cell;
  cell.spec = spec;
  cell.sigma = sigma;
  cell.density = density;
  cell.seed = seed;
  try {
    const Image noisy = AddGaussianNoise(clean, {sigma, seed});
    EncoderConfig cfg = plan.ConfigFor(spec);
    cfg.density_c = density;
    cfg.seed = seed;
    if (!sweep || !HasStepSize(spec.method)) {
      cell = RunConfigured(clean, noisy, spec, cfg, payload);
    } else {
      std::optional<CellResult> best;
      std::vector<std::uint8_t> best_payload;
      for (double alpha : SweepAlphas()) {
        EncoderConfig trial = cfg;
        trial.alpha = alpha;
        if (spec.method == Method::kL2Insta) {
          // Early stopping: the iteration with the lowest reconstruction error.
          int best_n = 1;
          double best_err = std::numeric_limits<double>::infinity();
          Encode(spec.method, noisy, trial, [&](int n, const Image& u, const Mask&) {
            const double e = Rmse8(clean, u);
            if (e < best_err) {
              best_err = e;
              best_n = n;
            }
          });
          trial.iterations_n = best_n;
        }
        std::vector<std::uint8_t> bytes;
        CellResult r = RunConfigured(clean, noisy, spec, trial, &bytes);
        if (!best || r.decode_rmse8 < best->decode_rmse8) {
          best = r;
          best_payload = std::move(bytes);
        }
      }
      cell = *best;
      if (payload) *payload = std::move(best_payload);
    }
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.decode_rmse8 = std::numeric_limits<double>::quiet_NaN();
    cell.encode_rmse8 = std::numeric_limits<double>::quiet_NaN();
  }
  cell.spec = spec;
  cell.sigma = sigma;
  cell.density = density;
  cell.seed = seed;
  return cell;
}

std::vector<CellResult> RunPlan(const ExperimentPlan& plan, const BenchOptions& options) {
  plan.Validate();
  const Image clean = CentreCrop(LoadPgm(plan.image_path), plan.crop);
  const bool sweep = options.sweep || plan.sweep;

  struct Job {
    double density;
    double sigma;
    MethodSpec spec;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double c : plan.densities) {
    for (double s : plan.sigmas) {
      for (const MethodSpec& m : plan.methods) {
        for (std::uint64_t seed : plan.seeds) jobs.push_back({c, s, m, seed});
      }
    }
  }

  const fs::path out_dir = plan.output_dir.empty() ? fs::path(".") : fs::path(plan.output_dir);
  fs::create_directories(out_dir / "payloads");

  std::vector<CellResult> cells(jobs.size());
  std::vector<std::vector<std::uint8_t>> payloads(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  const auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& j = jobs[k];
      cells[k] = RunCell(clean, plan, j.spec, j.sigma, j.density, j.seed, sweep, &payloads[k]);
      if (options.log) {
        std::lock_guard<std::mutex> lock(log_mutex);
        *options.log << "[" << (k + 1) << "/" << jobs.size() << "] " << j.spec.label
                     << " c=" << Compact(j.density) << " sigma=" << Compact(j.sigma)
                     << " seed=" << j.seed << " decode_rmse8="
                     << FormatValue(cells[k].decode_rmse8)
                     << (cells[k].error.empty() ? "" : " error: " + cells[k].error) << "\n";
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.jobs, static_cast<int>(jobs.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Everything below is serial and in plan order.
  std::ofstream errors(out_dir / "errors.log");
  std::ofstream long_csv(out_dir / "cells.csv");
  long_csv << "method,sigma,density,seed,alpha,iterations_n,iterations,stored,"
              "payload_bytes,decode_rmse8,encode_rmse8\n";
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const CellResult& c = cells[k];
    long_csv << c.spec.label << "," << Compact(c.sigma) << "," << Compact(c.density) << ","
             << c.seed << "," << Compact(c.alpha) << "," << c.iterations_n << ","
             << c.iterations << "," << c.stored << "," << c.payload_bytes << ","
             << FormatValue(c.decode_rmse8) << "," << FormatValue(c.encode_rmse8) << "\n";
    if (!c.error.empty()) {
      errors << c.spec.label << " sigma=" << Compact(c.sigma) << " density="
             << Compact(c.density) << " seed=" << c.seed << ": " << c.error << "\n";
    } else {
      const std::string name = c.spec.label + "_c" + Compact(c.density) + "_s" +
                               Compact(c.sigma) + "_seed" + std::to_string(c.seed) + ".pic";
      WritePayloadFile(payloads[k], (out_dir / "payloads" / name).string());
    }
  }

  // One table per (density, seed): rows are sigmas, columns methods.
  const auto index_of = [&](std::size_t ci, std::size_t si, std::size_t mi, std::size_t ki) {
    return ((ci * plan.sigmas.size() + si) * plan.methods.size() + mi) * plan.seeds.size() + ki;
  };
  for (std::size_t ci = 0; ci < plan.densities.size(); ++ci) {
    for (std::size_t ki = 0; ki < plan.seeds.size(); ++ki) {
      const std::string suffix =
          "_c" + Compact(plan.densities[ci]) + "_seed" + std::to_string(plan.seeds[ki]) + ".csv";
      std::ofstream decode_csv(out_dir / ("decode" + suffix));
      std::ofstream encode_csv(out_dir / ("encode" + suffix));
      decode_csv << "sigma";
      encode_csv << "sigma";
      for (const MethodSpec& m : plan.methods) {
        decode_csv << "," << m.label;
        encode_csv << "," << m.label;
      }
      decode_csv << "\n";
      encode_csv << "\n";
      for (std::size_t si = 0; si < plan.sigmas.size(); ++si) {
        decode_csv << Compact(plan.sigmas[si]);
        encode_csv << Compact(plan.sigmas[si]);
        for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
          const CellResult& c = cells[index_of(ci, si, mi, ki)];
          decode_csv << "," << FormatValue(c.decode_rmse8);
          encode_csv << "," << FormatValue(c.encode_rmse8);
        }
        decode_csv << "\n";
        encode_csv << "\n";
      }
    }
  }
  return cells;
}

}  // namespace picodec
