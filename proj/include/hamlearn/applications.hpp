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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hamlearn/cluster.hpp"
#include "hamlearn/learner.hpp"
#include "hamlearn/reconstruct.hpp"
#include "hamlearn/simulator.hpp"

namespace hamlearn {

/// Explicit sparse superposition of computational basis states.
struct ClassicalState {
  int n = 0;
  std::vector<std::pair<std::uint64_t, Complex>> configs;

  static ClassicalState basis_state(int n, std::uint64_t bits);
  /// Expands a stabilizer product state into its 2^{#non-Z} configurations.
  static ClassicalState from_labels(std::span<const StabilizerLabel> labels);
  void validate(double tol = 1e-10) const;
  DenseVector dense() const;
};

/// <phi|P|phi> by sparse enumeration over configuration pairs.
Complex expectation(const ClassicalState& phi, const PauliSum& p);

struct MeanPrediction {
  double value = 0;
  double std_error = 0;
};

/// <phi| U^dagger o U |phi> with U^dagger P U replaced by the ordered product of learned V_{P_j}.
MeanPrediction predict_mean_value(const std::vector<LearnedLocalOperator>& locals, const ClassicalState& phi,
                                  const PauliSum& o, bool use_raw = false);

struct Region2D {
  /// 0 for R1, 1 for R2, per qubit.
  std::vector<int> region;
  int strip_width = 2;
  int axis = 0;
};

/// Axis-aligned strips of width 2M along `axis`; even strips form R1, odd strips R2.
Region2D strip_partition(const std::vector<std::vector<int>>& coords, int M, int axis = 0);
/// Smallest graph distance between same-region qubits lying in different strips.
int min_same_region_separation(const Region2D& part, const std::vector<std::vector<int>>& coords);

struct MonteCarloResult {
  Complex estimate;
  double std_error = 0;
  double gamma1 = 0;
  double gamma2 = 0;
  /// sum_x a_x b_x by full enumeration.
  Complex exact;
  /// gamma1 gamma2 - |exact|^2.
  double variance_formula = 0;
  /// sum_x p(x)|F(x)|^2 - |sum_x p(x) F(x)|^2 by enumeration.
  double variance_enumerated = 0;
  double normalization = 0;
  Complex enumerated_mean;
};

/// Estimates <0^n| V(R1) V(R2) |0^n> with V(R) the product of the per-qubit operators in R.
MonteCarloResult mc_sew_2d(const std::vector<DenseOperator>& per_qubit, const Region2D& part, std::uint64_t shots,
                           std::uint64_t seed, int threads = 0);
/// Uses V_{O_i} for the given per-qubit observable letters.
MonteCarloResult mc_sew_2d(const std::vector<LearnedLocalOperator>& locals, int n, const std::vector<Pauli>& observable,
                           const Region2D& part, std::uint64_t shots, std::uint64_t seed, int threads = 0);

struct ClassifierModel {
  int n = 0;
  std::vector<PauliKey> basis;
  Eigen::VectorXd weights;
  double residual = 0;
  Eigen::Index rank = 0;
  bool ridge = false;
  double ridge_lambda = 0;
  std::string warning;

  double predict(const ClassicalState& phi) const;
};

ClassifierModel train_classifier(const std::vector<ClassicalState>& features, const Eigen::VectorXd& labels,
                                 const std::vector<PauliKey>& basis);
/// Basis = union of candidate_paulis over the support of o.
ClassifierModel train_classifier(const std::vector<ClassicalState>& features, const Eigen::VectorXd& labels,
                                 const PauliSum& o, const InteractionGraph& graph, const TruncationPlan& trunc);

struct ObservableGap {
  std::string label;
  double oracle_gap = 0;
  double sampled_gap = 0;
};

struct BenchReport {
  double gamma = 0;
  std::vector<ObservableGap> gaps;
  double max_oracle_gap = 0;
  double max_sampled_gap = 0;
  double reference = 0;
  double ratio = 0;
  /// max |alpha| / stderr over sampled traceless coefficients.
  double max_coefficient_z = 0;
  std::string verdict;
};

/// Learns from depolarized data and compares the sewed channel with the ideal evolution on a
/// panel of product states and observables. The oracle column uses exact noisy locals.
BenchReport noise_benchmark(const EvolutionPlan& plan, const NoiseModel& noise, const TruncationPlan& trunc,
                            std::uint64_t N, std::uint64_t seed, const LearnConfig& cfg = {});

}  // namespace hamlearn
