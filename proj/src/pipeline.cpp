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

#include "hamlearn/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "hamlearn/applications.hpp"
#include "hamlearn/cluster.hpp"
#include "hamlearn/dataset.hpp"
#include "hamlearn/digest.hpp"
#include "hamlearn/errors.hpp"
#include "hamlearn/hamiltonian.hpp"
#include "hamlearn/learner.hpp"
#include "hamlearn/reconstruct.hpp"
#include "hamlearn/simulator.hpp"
#include "json.hpp"

namespace hamlearn {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot write file");
  out << text;
  if (!out) throw IoError(path, "short write");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json config_echo(const ExperimentConfig& c) {
  json j;
  j["mode"] = c.mode;
  j["plan"] = fs::path(c.plan_path).filename().string();
  j["seed"] = c.seed;
  j["shots"] = c.shots ? json(*c.shots) : json(nullptr);
  j["epsilon"] = c.epsilon;
  j["delta"] = c.delta;
  j["gamma"] = c.gamma;
  j["gammas"] = c.gammas;
  j["trunc_m"] = c.trunc_m ? json(*c.trunc_m) : json(nullptr);
  j["kappa"] = c.kappa;
  j["eps_prime"] = c.eps_prime;
  j["trunc_cap"] = c.trunc_cap;
  j["trials"] = c.trials;
  j["threshold"] = c.threshold;
  j["max_default_shots"] = c.max_default_shots;
  j["sweep_shots"] = c.sweep_shots;
  j["mc_shots"] = c.mc_shots;
  j["classifier_examples"] = c.classifier_examples;
  j["verify_pairs"] = c.verify_pairs;
  return j;
}

json error_json(const ErrorReport& e) {
  return {{"surrogate_diamond", e.surrogate_diamond},
          {"max_trace_distance", e.max_trace_distance},
          {"per_local_inf_norms", e.per_local_inf_norms},
          {"truncation_bound", e.truncation_bound},
          {"sample_stderr_budget", e.sample_stderr_budget}};
}

class Runner {
 public:
  explicit Runner(const ExperimentConfig& cfg) : cfg_(cfg) {}

  RunResult execute();

 private:
  template <typename Fn>
  void stage(const std::string& name, Fn&& fn) {
    current_ = name;
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    timings_[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  std::string out(const std::string& file) const { return (fs::path(cfg_.out_dir) / file).string(); }
  LearnConfig learn_config() const;
  std::uint64_t shots_for_run();

  void load_plan_stage();
  void simulate_stage();
  void read_dataset_stage();
  void learn_stage();
  void evaluate_stage();
  void verify_stage();
  void classify_stage();
  void noise_stage();
  void sweep_stage();
  void monte_carlo_stage();
  void finish();

  const ExperimentConfig& cfg_;
  std::string current_;
  json report_;
  json timings_;
  EvolutionPlan plan_;
  InteractionGraph graph_;
  TruncationPlan trunc_;
  Dataset data_;
  std::vector<LearnedLocalOperator> locals_;
  std::optional<std::uint64_t> shots_;
};

LearnConfig Runner::learn_config() const {
  LearnConfig lc;
  lc.epsilon = cfg_.epsilon;
  lc.delta = cfg_.delta;
  lc.N_override = cfg_.shots;
  lc.M_override = cfg_.trunc_m;
  lc.threshold = cfg_.threshold;
  lc.threads = cfg_.threads;
  return lc;
}

std::uint64_t Runner::shots_for_run() {
  if (shots_) return *shots_;
  const SampleSize ss = sample_size(learn_config(), plan_.n, plan_.num_steps(), plan_.locality(), graph_.max_degree, trunc_.M);
  json s;
  s["formula"] = ss.saturated ? json("saturated") : json(ss.N);
  s["saturated"] = ss.saturated;
  std::uint64_t n = ss.N;
  if (cfg_.shots) {
    n = *cfg_.shots;
    s["source"] = "override";
  } else if (ss.N > cfg_.max_default_shots) {
    n = cfg_.max_default_shots;
    s["source"] = "formula_capped";
    report_["warnings"].push_back("sample-size formula exceeds max_default_shots; using " + std::to_string(n));
  } else {
    s["source"] = "formula";
  }
  s["used"] = n;
  report_["sample_size"] = s;
  shots_ = n;
  return n;
}

void Runner::load_plan_stage() {
  stage("parse", [&] {
    plan_ = load_plan(cfg_.plan_path);
    graph_ = interaction_graph(plan_);
    report_["inputs"]["plan_sha256"] = file_digest(cfg_.plan_path);
    report_["plan"] = {{"n", plan_.n},
                       {"steps", plan_.num_steps()},
                       {"locality", plan_.locality()},
                       {"degree", graph_.max_degree},
                       {"vertices", graph_.vertices.size()},
                       {"edges", graph_.num_edges},
                       {"t", plan_.max_time()},
                       {"t_star", std::isfinite(critical_time(plan_.num_steps(), graph_.max_degree))
                                      ? json(critical_time(plan_.num_steps(), graph_.max_degree))
                                      : json(nullptr)},
                       {"short_time", is_short_time(plan_, graph_)}};
  });
  stage("truncation_order", [&] {
    TruncationOptions opts;
    opts.kappa = cfg_.kappa;
    opts.cap = cfg_.trunc_cap;
    opts.M_override = cfg_.trunc_m;
    trunc_ = truncation_order(plan_, graph_, cfg_.eps_prime, opts);
    report_["truncation"] = {{"M", trunc_.M},
                             {"M_formula", trunc_.M_formula},
                             {"regime", regime_name(trunc_.regime)},
                             {"eps_prime", trunc_.epsilon_prime},
                             {"kappa", trunc_.kappa},
                             {"bound", truncation_bound(trunc_)},
                             {"term_count_bound", term_count_bound(trunc_, plan_.num_steps(), std::max(1, plan_.locality()), graph_.max_degree)}};
  });
}

void Runner::simulate_stage() {
  stage("sample_dataset", [&] {
    const std::uint64_t N = shots_for_run();
    std::optional<NoiseModel> noise;
    if (cfg_.gamma > 0) noise = NoiseModel{cfg_.gamma};
    data_ = sample_dataset(plan_, N, cfg_.seed, noise, SampleOptions{cfg_.threads});
    write_dataset(out("dataset.bin"), data_);
    report_["artifacts"]["dataset.bin"] = file_digest(out("dataset.bin"));
  });
}

void Runner::read_dataset_stage() {
  stage("read_dataset", [&] {
    const std::string path = cfg_.dataset_path.empty() ? out("dataset.bin") : cfg_.dataset_path;
    data_ = read_dataset(path);
    if (data_.n != plan_.n) throw DimensionError("dataset qubit count differs from plan");
    if (data_.plan_digest != sha256(serialize_plan(plan_))) report_["warnings"].push_back("dataset was generated from a different plan");
    report_["inputs"]["dataset_sha256"] = file_digest(path);
    report_["sample_size"] = {{"used", data_.size()}, {"source", "dataset"}};
    shots_ = data_.size();
  });
}

void Runner::learn_stage() {
  stage("learn_local_operators", [&] {
    locals_ = learn_local_operators(data_, graph_, trunc_, learn_config());
    write_text(out("model.json"), model_to_json(locals_, plan_.n));
    report_["artifacts"]["model.json"] = file_digest(out("model.json"));
    json per;
    for (const auto& op : locals_) {
      per.push_back({{"qubit", op.qubit}, {"base", std::string(1, pauli_char(op.base))}, {"candidates", op.num_candidates()}, {"kept", op.estimate.size()}});
    }
    report_["learning"] = per;
  });
}

void Runner::evaluate_stage() {
  LearnedChannel ch;
  stage("sew_channel", [&] { ch = sew_channel(locals_, plan_.n); });
  stage("reconstruction_error", [&] {
    const ErrorReport er = reconstruction_error(ch, locals_, plan_, cfg_.trials, cfg_.seed, trunc_);
    report_["reconstruction"] = error_json(er);
    fs::create_directories(out("tables"));
    write_local_error_table(out("tables/per_local_errors.csv"), plan_.n, er.per_local_inf_norms);
  });
  stage("compile_unitary", [&] {
    const CompiledChannel cc = compile_unitary(ch, 1, cfg_.epsilon);
    const TrotterDepth td = trotter_depth(ch, cfg_.epsilon, 1);
    json c = {{"p", cc.plan.p}, {"eps", cc.plan.eps}, {"depth", cc.plan.depth}, {"layers", td.layers}, {"max_local_depth", td.max_local}};
    if (2 * plan_.n <= 12) {
      const DenseOperator w = compiled_dense(cc, plan_.n);
      c["unitarity_error"] = (w.adjoint() * w - DenseOperator::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
      c["compiled_surrogate_diamond"] = phase_min_distance(w, sewed_target(evolution_unitary(plan_)));
    }
    report_["compile"] = c;
  });
}

void Runner::verify_stage() {
  stage("predict_mean_value", [&] {
    const DenseOperator u = evolution_unitary(plan_);
    const double bound = truncation_bound(trunc_);
    json rows = json::array();
    int pass = 0;
    double max_err = 0;
    for (int k = 0; k < cfg_.verify_pairs; ++k) {
      CounterRng rng = substream(cfg_.seed, StreamTag::Panel, 1000 + static_cast<std::uint64_t>(k));
      std::vector<StabilizerLabel> labels(plan_.n);
      for (auto& l : labels) l = static_cast<StabilizerLabel>(rng.bounded(6));
      const ClassicalState phi = ClassicalState::from_labels(labels);
      const int q = static_cast<int>(rng.bounded(plan_.n));
      PauliTerm o = PauliTerm::single(plan_.n, q, static_cast<Pauli>(1 + rng.bounded(3)));
      if (plan_.n > 1 && rng.bounded(2) == 1) {
        const int q2 = (q + 1) % plan_.n;
        o = mul(o, PauliTerm::single(plan_.n, q2, static_cast<Pauli>(1 + rng.bounded(3))));
      }
      const MeanPrediction pred = predict_mean_value(locals_, phi, PauliSum(o));
      const DenseVector out = u * phi.dense();
      const double exact = (out.adjoint() * to_dense(o) * out)(0, 0).real();
      const double err = std::abs(pred.value - exact);
      const double tol = std::max(bound, 3 * pred.std_error);
      pass += err <= tol;
      max_err = std::max(max_err, err);
      rows.push_back({{"observable", o.to_string().substr(1)}, {"predicted", pred.value}, {"exact", exact}, {"stderr", pred.std_error}, {"abs_error", err}});
    }
    report_["verification"] = {{"pairs", rows}, {"passed", pass}, {"max_abs_error", max_err}, {"truncation_bound", bound}};
  });
}

void Runner::classify_stage() {
  stage("train_classifier", [&] {
    const DenseOperator u = evolution_unitary(plan_);
    const PauliTerm o = PauliTerm::single(plan_.n, 0, Pauli::Z);
    const DenseOperator heis = exact_heisenberg(u, o);
    std::vector<ClassicalState> feats;
    Eigen::VectorXd labels(cfg_.classifier_examples);
    for (int k = 0; k < cfg_.classifier_examples; ++k) {
      CounterRng rng = substream(cfg_.seed, StreamTag::Classifier, static_cast<std::uint64_t>(k));
      std::vector<StabilizerLabel> ls(plan_.n);
      for (auto& l : ls) l = static_cast<StabilizerLabel>(rng.bounded(6));
      feats.push_back(ClassicalState::from_labels(ls));
      const DenseVector v = feats.back().dense();
      labels(k) = (v.adjoint() * heis * v)(0, 0).real();
    }
    const ClassifierModel m = train_classifier(feats, labels, PauliSum(o), graph_, trunc_);
    const double mse = m.residual * m.residual / cfg_.classifier_examples;
    report_["classifier"] = {{"observable", o.to_string().substr(1)},
                             {"examples", cfg_.classifier_examples},
                             {"basis_size", m.basis.size()},
                             {"rank", m.rank},
                             {"ridge", m.ridge},
                             {"residual_norm", m.residual},
                             {"mean_squared_loss", mse},
                             {"truncation_bound", truncation_bound(trunc_)}};
    if (!m.warning.empty()) report_["warnings"].push_back(m.warning);
  });
}

void Runner::noise_stage() {
  stage("noise_benchmark", [&] {
    std::vector<double> gammas = cfg_.gammas;
    if (gammas.empty()) gammas = cfg_.gamma > 0 ? std::vector<double>{cfg_.gamma} : std::vector<double>{0.01, 0.02, 0.04};
    const std::uint64_t N = shots_for_run();
    std::vector<NoiseRow> rows;
    json arr = json::array();
    for (double g : gammas) {
      const BenchReport br = noise_benchmark(plan_, NoiseModel{g}, trunc_, N, cfg_.seed, learn_config());
      rows.push_back({g, br.max_oracle_gap, br.reference});
      arr.push_back({{"gamma", g},
                     {"max_gap", br.max_oracle_gap},
                     {"max_sampled_gap", br.max_sampled_gap},
                     {"reference", br.reference},
                     {"ratio", br.ratio},
                     {"max_coefficient_z", br.max_coefficient_z},
                     {"verdict", br.verdict}});
    }
    report_["noise"] = arr;
    fs::create_directories(out("tables"));
    write_noise_table(out("tables/noise_sweep.csv"), rows);
  });
}

void Runner::sweep_stage() {
  stage("error_vs_shots", [&] {
    std::vector<SweepRow> rows;
    const DenseOperator u = evolution_unitary(plan_);
    for (std::uint64_t N : cfg_.sweep_shots) {
      const Dataset ds = sample_dataset(plan_, N, cfg_.seed, std::nullopt, SampleOptions{cfg_.threads});
      LearnConfig lc = learn_config();
      lc.threshold = false;
      const auto locals = learn_local_operators(ds, graph_, trunc_, lc);
      SweepRow r;
      r.shots = N;
      double se = 0;
      std::size_t count = 0;
      for (const auto& op : locals) {
        const DenseOperator exact = exact_heisenberg(u, PauliTerm::single(plan_.n, op.qubit, op.base));
        r.max_local_error = std::max(r.max_local_error, spectral_norm(to_dense(op.estimate) - exact));
        for (const auto& c : op.coefficients) {
          se += c.std_error;
          ++count;
        }
      }
      r.mean_stderr = count ? se / count : 0;
      rows.push_back(r);
    }
    fs::create_directories(out("tables"));
    write_sweep_table(out("tables/error_vs_shots.csv"), rows);
    json arr = json::array();
    for (const auto& r : rows) arr.push_back({{"shots", r.shots}, {"max_local_error", r.max_local_error}, {"mean_stderr", r.mean_stderr}});
    report_["error_vs_shots"] = arr;
  });
}

void Runner::monte_carlo_stage() {
  stage("mc_sew_2d", [&] {
    const Region2D part = strip_partition(*plan_.coords, trunc_.M);
    const std::vector<Pauli> obs(plan_.n, Pauli::Z);
    const MonteCarloResult mc = mc_sew_2d(locals_, plan_.n, obs, part, cfg_.mc_shots, cfg_.seed, cfg_.threads);
    const DenseOperator u = evolution_unitary(plan_);
    PauliTerm zall = PauliTerm::identity(plan_.n);
    for (int q = 0; q < plan_.n; ++q) zall = mul(zall, PauliTerm::single(plan_.n, q, Pauli::Z));
    const double exact = (u.adjoint() * to_dense(zall) * u)(0, 0).real();
    report_["monte_carlo"] = {{"estimate", mc.estimate.real()},
                              {"stderr", mc.std_error},
                              {"enumerated", mc.exact.real()},
                              {"exact", exact},
                              {"gamma1", mc.gamma1},
                              {"gamma2", mc.gamma2},
                              {"strip_width", part.strip_width}};
  });
}

void Runner::finish() {
  report_["config"] = config_echo(cfg_);
  if (!report_.contains("warnings")) report_["warnings"] = json::array();
}

RunResult Runner::execute() {
  RunResult res;
  report_["warnings"] = json::array();
  try {
    if (!cfg_.out_dir.empty()) {
      fs::create_directories(cfg_.out_dir);
      fs::remove(out("error.json"));
    }
    stage("validate_config", [&] { validate_config(cfg_); });
    load_plan_stage();
    const std::string& m = cfg_.mode;
    if (m == "simulate") {
      simulate_stage();
    } else if (m == "learn") {
      read_dataset_stage();
      learn_stage();
    } else if (m == "evaluate" || m == "verify") {
      if (cfg_.dataset_path.empty()) {
        simulate_stage();
      } else {
        read_dataset_stage();
      }
      learn_stage();
      evaluate_stage();
      if (m == "verify") verify_stage();
    } else if (m == "classify") {
      classify_stage();
    } else if (m == "bench-noise") {
      noise_stage();
    } else if (m == "full") {
      simulate_stage();
      learn_stage();
      evaluate_stage();
      verify_stage();
      classify_stage();
      if (plan_.n <= kDensityLimit) noise_stage();
      if (plan_.coords && plan_.dimension == 2) monte_carlo_stage();
      sweep_stage();
    }
    report_["status"] = "ok";
  } catch (const IoError& e) {
    res = {2, current_, e.what()};
  } catch (const ParseError& e) {
    res = {2, current_, e.what()};
  } catch (const std::exception& e) {
    res = {1, current_, e.what()};
  }
  if (res.exit_code != 0) report_["status"] = {{"error", res.message}, {"stage", res.failed_stage}};
  finish();
  try {
    if (fs::is_directory(cfg_.out_dir)) {
      write_text(out("report.json"), report_.dump(2) + "\n");
      write_text(out("timings.json"), timings_.dump(2) + "\n");
      if (res.exit_code != 0) {
        const json err = {{"exit_code", res.exit_code}, {"stage", res.failed_stage}, {"message", res.message}};
        write_text(out("error.json"), err.dump(2) + "\n");
      }
    }
  } catch (const std::exception& e) {
    if (res.exit_code == 0) res = {1, "write_report", e.what()};
  }
  return res;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path, "malformed config");
  }
  ExperimentConfig c;
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key) && !j[key].is_null()) field = j[key].get<std::decay_t<decltype(field)>>();
    };
    get("mode", c.mode);
    get("plan", c.plan_path);
    get("dataset", c.dataset_path);
    get("out", c.out_dir);
    get("seed", c.seed);
    if (j.contains("shots") && !j["shots"].is_null()) c.shots = j["shots"].get<std::uint64_t>();
    get("epsilon", c.epsilon);
    get("delta", c.delta);
    get("gamma", c.gamma);
    get("gammas", c.gammas);
    if (j.contains("trunc-m") && !j["trunc-m"].is_null()) c.trunc_m = j["trunc-m"].get<int>();
    get("kappa", c.kappa);
    get("eps-prime", c.eps_prime);
    get("trunc-cap", c.trunc_cap);
    get("threads", c.threads);
    get("trials", c.trials);
    get("threshold", c.threshold);
    get("max-default-shots", c.max_default_shots);
    get("sweep-shots", c.sweep_shots);
    get("mc-shots", c.mc_shots);
    get("classifier-examples", c.classifier_examples);
    get("verify-pairs", c.verify_pairs);
  } catch (const json::exception& e) {
    throw ParseError(path, std::string("bad config field: ") + e.what());
  }
  // Relative paths in a config file resolve against the file's directory.
  const fs::path base = fs::path(path).parent_path();
  if (!c.plan_path.empty() && fs::path(c.plan_path).is_relative()) c.plan_path = (base / c.plan_path).string();
  if (!c.dataset_path.empty() && fs::path(c.dataset_path).is_relative()) c.dataset_path = (base / c.dataset_path).string();
  return c;
}

void validate_config(const ExperimentConfig& c) {
  if (std::find(known_modes().begin(), known_modes().end(), c.mode) == known_modes().end()) throw ValueError("unknown mode '" + c.mode + "'");
  if (c.plan_path.empty()) throw ValueError("no plan file given");
  if (!fs::exists(c.plan_path)) throw IoError(c.plan_path, "plan file not found");
  if (c.out_dir.empty()) throw ValueError("no output directory given");
  if (c.mode == "learn") {
    const std::string ds = c.dataset_path.empty() ? (fs::path(c.out_dir) / "dataset.bin").string() : c.dataset_path;
    if (!fs::exists(ds)) throw IoError(ds, "dataset file not found");
  }
  if (!c.dataset_path.empty() && !fs::exists(c.dataset_path)) throw IoError(c.dataset_path, "dataset file not found");
  if (!(c.epsilon > 0 && c.epsilon < 1) || !(c.delta > 0 && c.delta < 1)) throw ValueError("epsilon and delta must lie in (0, 1)");
  if (c.gamma < 0 || c.gamma > 1) throw ValueError("gamma must lie in [0, 1]");
  if (c.shots && *c.shots == 0) throw ValueError("shots must be positive");
  if (c.trials < 0) throw ValueError("trials must be nonnegative");
}

RunResult run(const ExperimentConfig& cfg) {
  Runner r(cfg);
  return r.execute();
}

void write_noise_table(const std::string& path, const std::vector<NoiseRow>& rows) {
  std::string s = "gamma,max_gap,reference\n";
  for (const auto& r : rows) s += fmt(r.gamma) + "," + fmt(r.max_gap) + "," + fmt(r.reference) + "\n";
  write_text(path, s);
}

void write_sweep_table(const std::string& path, const std::vector<SweepRow>& rows) {
  std::string s = "shots,max_local_error,mean_stderr,stderr_ratio\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string ratio = k == 0 || rows[k - 1].mean_stderr == 0 ? "" : fmt(rows[k].mean_stderr / rows[k - 1].mean_stderr);
    s += std::to_string(rows[k].shots) + "," + fmt(rows[k].max_local_error) + "," + fmt(rows[k].mean_stderr) + "," + ratio + "\n";
  }
  write_text(path, s);
}

void write_local_error_table(const std::string& path, int n, const std::vector<double>& errors) {
  std::string s = "qubit,observable,inf_norm_error\n";
  for (std::size_t k = 0; k < errors.size(); ++k) {
    const int q = static_cast<int>(k / 3);
    if (q >= n) break;
    s += std::to_string(q) + "," + pauli_char(static_cast<Pauli>(k % 3 + 1)) + "," + fmt(errors[k]) + "\n";
  }
  write_text(path, s);
}

}  // namespace hamlearn
