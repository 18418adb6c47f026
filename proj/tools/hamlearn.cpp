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

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "hamlearn/pipeline.hpp"

int main(int argc, char** argv) {
  using hamlearn::ExperimentConfig;
  CLI::App app{"hamlearn: learn short-time dynamics from randomized measurements"};
  std::string mode, config_path;
  ExperimentConfig flags;
  std::uint64_t shots = 0;
  int trunc_m = 0;
  app.add_option("mode", mode, "simulate | learn | evaluate | verify | classify | bench-noise | full")->required();
  app.add_option("--config", config_path, "JSON config; explicit flags override it");
  auto* plan_opt = app.add_option("--plan", flags.plan_path, "evolution plan (JSON)");
  auto* seed_opt = app.add_option("--seed", flags.seed, "master seed");
  auto* shots_opt = app.add_option("--shots", shots, "number of measurement records");
  auto* eps_opt = app.add_option("--epsilon", flags.epsilon, "target accuracy");
  auto* delta_opt = app.add_option("--delta", flags.delta, "failure probability");
  auto* gamma_opt = app.add_option("--gamma", flags.gamma, "depolarizing strength per step");
  auto* gammas_opt = app.add_option("--gammas", flags.gammas, "noise sweep values for bench-noise");
  auto* m_opt = app.add_option("--trunc-m", trunc_m, "override the truncation order");
  auto* kappa_opt = app.add_option("--kappa", flags.kappa, "constant-time branch parameter");
  auto* epsp_opt = app.add_option("--eps-prime", flags.eps_prime, "truncation accuracy");
  auto* threads_opt = app.add_option("--threads", flags.threads, "worker threads (0 = all cores)");
  auto* ds_opt = app.add_option("--dataset", flags.dataset_path, "dataset file for learn");
  auto* out_opt = app.add_option("--out", flags.out_dir, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  ExperimentConfig cfg;
  if (!config_path.empty()) {
    try {
      cfg = hamlearn::load_config(config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  cfg.mode = mode;
  if (*plan_opt) cfg.plan_path = flags.plan_path;
  if (*seed_opt) cfg.seed = flags.seed;
  if (*shots_opt) cfg.shots = shots;
  if (*eps_opt) cfg.epsilon = flags.epsilon;
  if (*delta_opt) cfg.delta = flags.delta;
  if (*gamma_opt) cfg.gamma = flags.gamma;
  if (*gammas_opt) cfg.gammas = flags.gammas;
  if (*m_opt) cfg.trunc_m = trunc_m;
  if (*kappa_opt) cfg.kappa = flags.kappa;
  if (*epsp_opt) cfg.eps_prime = flags.eps_prime;
  if (*threads_opt) cfg.threads = flags.threads;
  if (*ds_opt) cfg.dataset_path = flags.dataset_path;
  if (*out_opt) cfg.out_dir = flags.out_dir;
  if (const char* env = std::getenv("HAMLEARN_OUT_DIR"); env && *env && !*out_opt) cfg.out_dir = env;

  const hamlearn::RunResult r = hamlearn::run(cfg);
  if (r.exit_code != 0) {
    std::cerr << "error";
    if (!r.failed_stage.empty()) std::cerr << " in stage " << r.failed_stage;
    std::cerr << ": " << r.message << "\n";
  }
  return r.exit_code;
}
