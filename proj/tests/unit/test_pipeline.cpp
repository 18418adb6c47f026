// Copyright 2026 The hamlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "hamlearn/errors.hpp"
#include "hamlearn/pipeline.hpp"
#include "json.hpp"

namespace hamlearn {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hamlearn_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ExperimentConfig base(const std::string& mode, const fs::path& out) {
  ExperimentConfig c;
  c.mode = mode;
  c.plan_path = std::string(HAMLEARN_SOURCE_DIR) + "/configs/tfim3.json";
  c.out_dir = out.string();
  c.seed = 4;
  c.shots = 3000;
  c.trunc_m = 1;
  c.trials = 3;
  return c;
}

TEST(Config, LoadResolvesRelativePaths) {
  const ExperimentConfig c = load_config(std::string(HAMLEARN_SOURCE_DIR) + "/configs/tfim3_full.json");
  EXPECT_EQ(c.mode, "full");
  EXPECT_TRUE(fs::exists(c.plan_path));
  ASSERT_TRUE(c.trunc_m.has_value());
  EXPECT_EQ(*c.trunc_m, 2);
  EXPECT_EQ(c.sweep_shots.size(), 3u);
}

TEST(Config, MalformedFileIsParseError) {
  const fs::path dir = scratch("badcfg");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << "{\"seed\": \"x\"}";
  EXPECT_THROW(load_config((dir / "c.json").string()), ParseError);
  EXPECT_THROW(load_config((dir / "missing.json").string()), IoError);
}

TEST(Pipeline, SimulateThenLearn) {
  const fs::path out = scratch("simlearn");
  ASSERT_EQ(run(base("simulate", out)).exit_code, 0);
  EXPECT_TRUE(fs::exists(out / "dataset.bin"));
  ASSERT_EQ(run(base("learn", out)).exit_code, 0);
  EXPECT_TRUE(fs::exists(out / "model.json"));
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  EXPECT_EQ(report["status"], "ok");
  EXPECT_EQ(report["sample_size"]["used"], 3000);
  EXPECT_FALSE(report.contains("timings"));
  EXPECT_TRUE(nlohmann::json::parse(slurp(out / "timings.json")).contains("learn_local_operators"));
}

TEST(Pipeline, MissingDatasetExitsTwoWithStage) {
  const fs::path out = scratch("missing");
  const RunResult r = run(base("learn", out));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.message.find("dataset.bin"), std::string::npos);
  const auto err = nlohmann::json::parse(slurp(out / "error.json"));
  EXPECT_EQ(err["stage"], r.failed_stage);
}

TEST(Pipeline, BadPlanReportsParseStage) {
  const fs::path out = scratch("badplan");
  fs::create_directories(out);
  std::ofstream(out / "plan.json") << R"({"n": 2, "steps": []})";
  ExperimentConfig c = base("simulate", out);
  c.plan_path = (out / "plan.json").string();
  const RunResult r = run(c);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.failed_stage, "parse");
  EXPECT_TRUE(fs::exists(out / "error.json"));
}

TEST(Pipeline, DefaultShotsCappedWithWarning) {
  const fs::path out = scratch("defaultshots");
  ExperimentConfig c = base("simulate", out);
  c.shots.reset();
  c.max_default_shots = 500;
  ASSERT_EQ(run(c).exit_code, 0);
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  EXPECT_EQ(report["sample_size"]["used"], 500);
  EXPECT_EQ(report["sample_size"]["source"], "formula_capped");
  EXPECT_FALSE(report["warnings"].empty());
}

TEST(Pipeline, SameSeedSameBytes) {
  const fs::path a = scratch("repro_a"), b = scratch("repro_b");
  ExperimentConfig ca = base("evaluate", a), cb = base("evaluate", b);
  cb.threads = 3;
  ASSERT_EQ(run(ca).exit_code, 0);
  ASSERT_EQ(run(cb).exit_code, 0);
  for (const char* f : {"dataset.bin", "model.json", "report.json", "tables/per_local_errors.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Tables, SweepRatioColumn) {
  const fs::path out = scratch("tables");
  fs::create_directories(out);
  write_sweep_table((out / "s.csv").string(), {{100, 0.5, 0.2}, {400, 0.25, 0.1}});
  const std::string text = slurp(out / "s.csv");
  EXPECT_NE(text.find("shots,max_local_error,mean_stderr,stderr_ratio"), std::string::npos);
  EXPECT_NE(text.find("400,0.25,0.10000000000000001,0.5"), std::string::npos);
}

}  // namespace
}  // namespace hamlearn
