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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "picodec/bench.h"
#include "picodec/codec.h"
#include "picodec/diffusion.h"
#include "picodec/error.h"
#include "picodec/image_ops.h"
#include "picodec/pgm.h"
#include "test_util.h"

namespace picodec {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("picodec_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

int Cli(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  args.insert(args.begin(), "picodec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(MethodSpec, Labels) {
  EXPECT_EQ(ParseMethodSpec("h1-h")->threshold, ThresholdMode::kSoftFs);
  EXPECT_EQ(ParseMethodSpec("l2-insta-h")->threshold, ThresholdMode::kSoftFs);
  EXPECT_EQ(ParseMethodSpec("l2-inc-h")->threshold, ThresholdMode::kSoftLloyd);
  EXPECT_EQ(ParseMethodSpec("l2-inc-t-e")->method, Method::kL2IncTE);
  EXPECT_EQ(ParseMethodSpec("dens")->method, Method::kDens);
  EXPECT_FALSE(ParseMethodSpec("l2-foo").has_value());
}

TEST(Plan, ParsesKeysAndScopes) {
  const ExperimentPlan plan = ParsePlan(
      "# comment\n"
      "image = img.pgm\n"
      "output = out   # trailing comment\n"
      "sigmas = 0, 0.03\n"
      "densities = 0.05,0.1\n"
      "methods = h1-t, l2-inc-t\n"
      "seeds = 1, 2\n"
      "crop = 64\n"
      "alpha = 0.2\n"
      "alpha[l2-inc-t] = 0.26\n"
      "per_iter_pixels = 20\n",
      "/data/plans");
  EXPECT_EQ(plan.image_path, "/data/plans/img.pgm");
  EXPECT_EQ(plan.output_dir, "/data/plans/out");
  EXPECT_EQ(plan.sigmas, (std::vector<double>{0, 0.03}));
  EXPECT_EQ(plan.densities, (std::vector<double>{0.05, 0.1}));
  EXPECT_EQ(plan.seeds, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(plan.crop, 64);
  ASSERT_EQ(plan.methods.size(), 2u);
  EXPECT_EQ(plan.ConfigFor(plan.methods[0]).alpha, 0.2);
  EXPECT_EQ(plan.ConfigFor(plan.methods[1]).alpha, 0.26);
  EXPECT_EQ(plan.ConfigFor(plan.methods[1]).per_iter_pixels, 20);
}

TEST(Plan, RejectsBadPlans) {
  const std::string base =
      "image = a.pgm\nsigmas = 0\ndensities = 0.1\nmethods = h1-t\nseeds = 0\n";
  EXPECT_NO_THROW(ParsePlan(base));
  EXPECT_THROW(ParsePlan(base + "bogus = 1\n"), Error);
  EXPECT_THROW(ParsePlan(base + "alpha = fast\n"), Error);
  EXPECT_THROW(ParsePlan(base + "alpha[l2-bogus] = 1\n"), Error);
  EXPECT_THROW(ParsePlan(base + "densities = 1.5\n"), Error);
  EXPECT_THROW(ParsePlan(base + "sigmas = -0.1\n"), Error);
  EXPECT_THROW(ParsePlan(base + "methods = \n"), Error);
  EXPECT_THROW(ParsePlan(base + "just words\n"), Error);
  EXPECT_THROW(ParsePlan("sigmas = 0\ndensities = 0.1\nmethods = h1-t\nseeds = 0\n"), Error);
}

TEST(Bench, SingleCellAndFailureIsolation) {
  TempDir dir;
  SavePgm(testing::CentreCrop(testing::BenchmarkImage(), 32), dir / "img.pgm");
  SavePgm(Image(16, 16, 0.5), dir / "flat.pgm");
  WriteFile(dir / "one.plan",
            "image = img.pgm\noutput = out\nsigmas = 0.03\ndensities = 0.1\n"
            "methods = h1-t\nseeds = 4\n");
  const auto cells = RunPlan(LoadPlan(dir / "one.plan"), {});
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_TRUE(cells[0].error.empty());
  const auto lines = Lines(ReadFile(dir / "out/decode_c0.1_seed4.csv"));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "sigma,h1-t");
  EXPECT_EQ(lines[1].rfind("0.03,", 0), 0u);
  EXPECT_TRUE(fs::exists(dir / "out/payloads/h1-t_c0.1_s0.03_seed4.pic"));
  EXPECT_TRUE(fs::exists(dir / "out/encode_c0.1_seed4.csv"));
  EXPECT_TRUE(fs::exists(dir / "out/cells.csv"));

  // Soft thresholding of a constant image fails; the run continues.
  WriteFile(dir / "bad.plan",
            "image = flat.pgm\noutput = bad\nsigmas = 0\ndensities = 0.1\n"
            "methods = h1-h, h1-t\nseeds = 0\n");
  const auto mixed = RunPlan(LoadPlan(dir / "bad.plan"), {});
  ASSERT_EQ(mixed.size(), 2u);
  EXPECT_FALSE(mixed[0].error.empty());
  EXPECT_TRUE(std::isnan(mixed[0].decode_rmse8));
  EXPECT_TRUE(mixed[1].error.empty());
  EXPECT_EQ(Lines(ReadFile(dir / "bad/decode_c0.1_seed0.csv"))[1].substr(0, 6), "0,nan,");
  EXPECT_NE(ReadFile(dir / "bad/errors.log").find("h1-h"), std::string::npos);
}

TEST(Bench, DeterministicAcrossRunsAndJobs) {
  TempDir dir;
  SavePgm(testing::CentreCrop(testing::BenchmarkImage(), 32), dir / "img.pgm");
  const std::string plan_text =
      "image = img.pgm\nsigmas = 0, 0.05\ndensities = 0.1\n"
      "methods = h1-t, l2-insta-t, l2-inc-h, spar\nseeds = 1, 2\n"
      "iterations[l2-insta-t] = 5\n";
  WriteFile(dir / "p.plan", plan_text + "output = a\n");
  WriteFile(dir / "q.plan", plan_text + "output = b\n");
  RunPlan(LoadPlan(dir / "p.plan"), {});
  BenchOptions parallel;
  parallel.jobs = 3;
  RunPlan(LoadPlan(dir / "q.plan"), parallel);
  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir.path() / "a")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir.path() / "a");
    EXPECT_EQ(ReadFile(entry.path().string()), ReadFile((dir.path() / "b" / rel).string()))
        << rel;
    ++compared;
  }
  EXPECT_EQ(compared, 2u + 2u + 1u + 1u + 16u);  // csvs, cells, errors, payloads
}

TEST(Bench, SweepPicksTheBestAlpha) {
  const Image clean = testing::CentreCrop(testing::BenchmarkImage(), 32);
  ExperimentPlan plan = ParsePlan(
      "image = x.pgm\nsigmas = 0.05\ndensities = 0.1\nmethods = l2-insta-t\nseeds = 0\n"
      "iterations = 20\n");
  const CellResult plain = RunCell(clean, plan, plan.methods[0], 0.05, 0.1, 0, false);
  const CellResult swept = RunCell(clean, plan, plan.methods[0], 0.05, 0.1, 0, true);
  EXPECT_TRUE(swept.error.empty());
  EXPECT_GE(swept.iterations_n, 1);
  EXPECT_LE(swept.iterations_n, 20);
  EXPECT_LE(swept.decode_rmse8, plain.decode_rmse8 + 1e-9);
}

TEST(Cli, EncodeDecodeRoundTrip) {
  TempDir dir;
  const std::string img = testing::DataPath("chelsea256.pgm");
  std::string out;
  ASSERT_EQ(Cli({"encode", "--input", img, "--method", "h1-t", "--density", "0.1",
                 "--output", dir / "a.pic", "--preview", dir / "p.pgm"},
                &out),
            kExitOk);
  EXPECT_NE(out.find("density=0.1000"), std::string::npos);
  EXPECT_NE(out.find("rmse8="), std::string::npos);
  ASSERT_EQ(Cli({"decode", "--input", dir / "a.pic", "--output", dir / "d.pgm"}), kExitOk);
  const Image decoded = LoadPgm(dir / "d.pgm");
  EXPECT_EQ(decoded.width(), 256);
  const Payload p = Deserialize(ReadPayloadFile(dir / "a.pic"));
  EXPECT_EQ(p.mask.Count(), 6553u);
}

TEST(Cli, UsageErrors) {
  TempDir dir;
  const std::string img = testing::DataPath("chelsea256.pgm");
  const auto encode = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"encode", "--input", img, "--output", dir / "x.pic"};
    args.insert(args.end(), extra.begin(), extra.end());
    return Cli(args);
  };
  EXPECT_EQ(encode({"--method", "h1-t", "--density", "1.5"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "l2-inc", "--iterations", "3"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "h1-t", "--fraction", "0.01"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "h1-t", "--threshold", "fs"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "l2-inc", "--threshold", "fs"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "spar", "--threshold", "lloyd"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "nope"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "h1-t", "--alpha", "-1"}), kExitUsage);
  EXPECT_EQ(encode({"--method", "h1-t", "--density", "abc"}), kExitUsage);
  EXPECT_EQ(encode({}), kExitUsage);
  EXPECT_EQ(Cli({}), kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}), kExitUsage);
  std::string out;
  EXPECT_EQ(Cli({"--help"}, &out), kExitOk);
  EXPECT_NE(out.find("encode"), std::string::npos);
}

TEST(Cli, ThresholdFlagOnBareLabel) {
  TempDir dir;
  SavePgm(testing::CentreCrop(testing::BenchmarkImage(), 48), dir / "img.pgm");
  EXPECT_EQ(Cli({"encode", "-i", dir / "img.pgm", "-m", "h1", "--threshold", "fs", "-o",
                 dir / "a.pic"}),
            kExitOk);
  EXPECT_EQ(Cli({"encode", "-i", dir / "img.pgm", "-m", "h1-h", "--threshold", "fs", "-o",
                 dir / "a.pic"}),
            kExitOk);
}

TEST(Cli, TraceHasOneRowPerIteration) {
  TempDir dir;
  SavePgm(testing::CentreCrop(testing::BenchmarkImage(), 64), dir / "img.pgm");
  ASSERT_EQ(Cli({"encode", "--input", dir / "img.pgm", "--method", "l2-insta", "--alpha",
                 "0.05", "--iterations", "100", "--output", dir / "a.pic", "--trace",
                 dir / "t.csv"}),
            kExitOk);
  const auto lines = Lines(ReadFile(dir / "t.csv"));
  ASSERT_EQ(lines.size(), 101u);
  EXPECT_EQ(lines[0], "iteration,rmse8");
  EXPECT_EQ(lines[100].rfind("100,", 0), 0u);
}

TEST(Cli, RuntimeErrors) {
  TempDir dir;
  WriteFile(dir / "junk.pic", "not a payload");
  EXPECT_EQ(Cli({"decode", "--input", dir / "junk.pic", "--output", dir / "o.pgm"}),
            kExitRuntime);
  EXPECT_EQ(Cli({"decode", "--input", dir / "missing.pic", "--output", dir / "o.pgm"}),
            kExitRuntime);
  EXPECT_EQ(Cli({"encode", "--input", dir / "missing.pgm", "--method", "h1-t", "--output",
                 dir / "o.pic"}),
            kExitRuntime);
}

TEST(Cli, FullMaskDecodeReturnsTonal) {
  TempDir dir;
  Payload p;
  p.method = Method::kL2Inc;
  p.mask = Mask::Full(5, 4);
  p.tonal = Image(5, 4);
  for (std::size_t i = 0; i < 20; ++i) p.tonal[i] = static_cast<double>(i * 12) / 255.0;
  WritePayloadFile(Serialize(p), dir / "full.pic");
  ASSERT_EQ(Cli({"decode", "-i", dir / "full.pic", "-o", dir / "full.pgm"}), kExitOk);
  EXPECT_EQ(LoadPgm(dir / "full.pgm"), p.tonal);
}

TEST(Cli, DenoiseReport) {
  TempDir dir;
  SavePgm(testing::CentreCrop(testing::BenchmarkImage(), 64), dir / "img.pgm");
  std::string out;
  ASSERT_EQ(Cli({"denoise", "-i", dir / "img.pgm", "--sigma", "0", "--eta", "0.01", "-o",
                 dir / "u.pgm", "--baseline-output", dir / "b.pgm"},
                &out),
            kExitOk);
  EXPECT_EQ(Lines(out).size(), 1u);
  EXPECT_NE(out.find("filter_rmse8="), std::string::npos);
  const Image f = LoadPgm(dir / "img.pgm");
  EXPECT_LT(Rmse8(f, LoadPgm(dir / "b.pgm")), 1.0);
  // Default preset at sigma 0: N = 44 steps of 0.01.
  EXPECT_LE(Rmse8(f, LoadPgm(dir / "u.pgm")), Rmse8(f, LinearDiffusionFilter(f, 0.44, 44)));
  EXPECT_EQ(Cli({"denoise", "-i", dir / "img.pgm", "-m", "l2-inc-t", "--iterations", "4"}),
            kExitUsage);
  EXPECT_EQ(Cli({"denoise", "-i", dir / "img.pgm", "-m", "bogus"}), kExitUsage);
}

TEST(Cli, Bench) {
  TempDir dir;
  SavePgm(testing::CentreCrop(testing::BenchmarkImage(), 32), dir / "img.pgm");
  WriteFile(dir / "p.plan",
            "image = img.pgm\nsigmas = 0\ndensities = 0.1\nmethods = h1-t\nseeds = 0\n");
  std::string out;
  EXPECT_EQ(Cli({"bench", "--plan", dir / "p.plan", "--output-dir", dir / "res", "-q"}, &out),
            kExitOk);
  EXPECT_TRUE(fs::exists(dir / "res/decode_c0.1_seed0.csv"));
  WriteFile(dir / "bad.plan", "image = img.pgm\n");
  EXPECT_EQ(Cli({"bench", "--plan", dir / "bad.plan"}), kExitUsage);
  EXPECT_EQ(Cli({"bench", "--plan", dir / "none.plan"}), kExitRuntime);
}

}  // namespace
}  // namespace picodec
