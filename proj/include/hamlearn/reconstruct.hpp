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

#include "hamlearn/cluster.hpp"
#include "hamlearn/dense.hpp"
#include "hamlearn/learner.hpp"
#include "hamlearn/simulator.hpp"

namespace hamlearn {

/// Sewed operator V = S V_1 ... V_n on 2n qubits; qubit n+i is the partner of qubit i.
class LearnedChannel {
 public:
  LearnedChannel() = default;
  LearnedChannel(int n, std::vector<PauliSum> factors);

  int num_qubits() const { return n_; }
  /// V_i = (1/2)(I (x) I + sum_O V_{O_i} (x) O_{n+i}).
  const std::vector<PauliSum>& factors() const { return factors_; }
  /// Dense V; requires 2n <= kSewedDenseLimit. Cached after the first call.
  const DenseOperator& dense() const;

 private:
  int n_ = 0;
  std::vector<PauliSum> factors_;
  mutable std::optional<DenseOperator> dense_;
};

/// `locals` must hold all 3n (i, O) pairs; order does not matter.
LearnedChannel sew_channel(const std::vector<LearnedLocalOperator>& locals, int n, bool use_raw = false);

/// Exact locals from the dense oracle: U^dagger O_i U, or the noisy adjoint when noise is given.
std::vector<LearnedLocalOperator> oracle_locals(const EvolutionPlan& plan, const std::optional<NoiseModel>& noise = std::nullopt);
std::vector<LearnedLocalOperator> oracle_locals(const DenseOperator& u, int n);

/// U on qubits [0, n) and U^dagger on [n, 2n).
DenseOperator sewed_target(const DenseOperator& u);

/// Tr_{>n}[V (rho (x) I/2^n) V^dagger].
DenseOperator apply_channel(const LearnedChannel& ch, const DenseOperator& rho);

struct ErrorReport {
  double surrogate_diamond = 0;
  double max_trace_distance = 0;
  std::vector<double> per_local_inf_norms;
  double truncation_bound = 0;
  double sample_stderr_budget = 0;

  double max_local_error() const;
};

ErrorReport reconstruction_error(const LearnedChannel& ch, const std::vector<LearnedLocalOperator>& locals,
                                 const EvolutionPlan& plan, int trials, std::uint64_t seed,
                                 const std::optional<TruncationPlan>& trunc = std::nullopt);

struct CompiledLocal {
  std::vector<int> qubits;
  DenseOperator W;
};

struct CompilePlan {
  int p = 1;
  double eps = 1e-2;
  std::uint64_t depth = 1;
};

struct CompiledChannel {
  std::vector<CompiledLocal> locals;
  CompilePlan plan;
};

inline constexpr int kLocalCompileLimit = 12;

/// W_i = exp(-i pi/2 (V_i - I)) on the support of V_i.
CompiledChannel compile_unitary(const LearnedChannel& ch, int p = 1, double eps = 1e-2);
/// S W_1 ... W_n as a dense 2n-qubit operator.
DenseOperator compiled_dense(const CompiledChannel& c, int n);

struct TrotterDepth {
  std::vector<std::uint64_t> per_local;
  std::uint64_t max_local = 0;
  int layers = 0;
  std::uint64_t total = 0;
};

/// Per-local ceil(pi/2 ((3L)^p 2^p)^{1/p} / eps^{1/p}) with L the local term count.
std::uint64_t trotter_local_depth(std::size_t L, double eps, int p);
TrotterDepth trotter_depth(const LearnedChannel& ch, double eps, int p);

}  // namespace hamlearn
