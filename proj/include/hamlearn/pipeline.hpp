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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hamlearn {

struct ExperimentConfig {
  std::string mode;
  std::string plan_path;
  std::string dataset_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> shots;
  double epsilon = 0.1;
  double delta = 0.05;
  double gamma = 0;
  std::vector<double> gammas;
  std::optional<int> trunc_m;
  double kappa = 0.5;
  double eps_prime = 1e-3;
  int trunc_cap = 8;
  int threads = 0;
  int trials = 20;
  bool threshold = true;
  /// Used when --shots is absent and the sample-size formula exceeds it.
  std::uint64_t max_default_shots = 200000;
  std::vector<std::uint64_t> sweep_shots;
  std::uint64_t mc_shots = 10000;
  int classifier_examples = 40;
  int verify_pairs = 30;
};

inline const std::vector<std::string>& known_modes() {
  static const std::vector<std::string> modes = {"simulate", "learn", "evaluate", "verify", "classify", "bench-noise", "full"};
  return modes;
}

/// Reads a JSON config; keys mirror the CLI flags (e.g. "trunc-m", "shots").
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& cfg);

struct RunResult {
  int exit_code = 0;
  std::string failed_stage;
  std::string message;
};

/// Runs the requested stage chain and writes artifacts into cfg.out_dir. Never throws.
RunResult run(const ExperimentConfig& cfg);

struct NoiseRow {
  double gamma = 0;
  double max_gap = 0;
  double reference = 0;
};

struct SweepRow {
  std::uint64_t shots = 0;
  double max_local_error = 0;
  double mean_stderr = 0;
};

void write_noise_table(const std::string& path, const std::vector<NoiseRow>& rows);
void write_sweep_table(const std::string& path, const std::vector<SweepRow>& rows);
void write_local_error_table(const std::string& path, int n, const std::vector<double>& errors);

}  // namespace hamlearn
