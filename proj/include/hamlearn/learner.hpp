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
#include "hamlearn/dataset.hpp"
#include "hamlearn/hamiltonian.hpp"
#include "hamlearn/pauli.hpp"

namespace hamlearn {

struct CoefficientEstimate {
  PauliKey key;
  double alpha = 0;
  double std_error = 0;
  bool kept = true;
};

/// Learned approximation of U^dagger O_i U. `estimate` holds the kept coefficients.
struct LearnedLocalOperator {
  int qubit = 0;
  Pauli base = Pauli::Z;
  PauliSum estimate;
  std::vector<CoefficientEstimate> coefficients;

  std::size_t num_candidates() const { return coefficients.size(); }
  /// All candidate estimates, thresholded or not.
  PauliSum raw_estimate() const;
};

struct LearnConfig {
  double epsilon = 0.1;
  double delta = 0.05;
  std::optional<std::uint64_t> N_override;
  std::optional<int> M_override;
  /// Zero coefficients with |alpha| < threshold_sigmas * stderr.
  bool threshold = true;
  double threshold_sigmas = 2.0;
  /// Exponent constant in the sample-size formula.
  double c = 1.0;
  int threads = 0;
  std::size_t max_candidates = std::size_t{1} << 16;
};

inline constexpr std::size_t local_index(int qubit, Pauli o) { return 3 * static_cast<std::size_t>(qubit) + static_cast<std::size_t>(o) - 1; }

/// 3 <phi_{l,i}|O|phi_{l,i}> in {0, +3, -3}.
double estimate_u(const Dataset& data, std::uint64_t record, int qubit, Pauli o);

/// Non-identity Pauli strings inside some lightcone region of qubit i (a region is {i} or
/// {i} together with the supports of a connected vertex set touching i).
std::vector<PauliKey> candidate_paulis(const InteractionGraph& graph, int qubit, const TruncationPlan& trunc,
                                       std::size_t max_candidates = std::size_t{1} << 16);

struct CoefficientStats {
  double alpha = 0;
  double std_error = 0;
};

CoefficientStats estimate_coefficient(const Dataset& data, const PauliKey& q, int qubit, Pauli o);

/// 3n operators ordered by local_index.
std::vector<LearnedLocalOperator> learn_local_operators(const Dataset& data, const InteractionGraph& graph,
                                                        const TruncationPlan& trunc, const LearnConfig& cfg = {});

struct SampleSize {
  std::uint64_t N = 0;
  bool saturated = false;
};

/// ceil(n^2 max(1, 4^{K Lambda} 3 e d)^{c M} log(1/delta) / eps^2).
SampleSize sample_size(const LearnConfig& cfg, int n, int K, int locality, int degree, int M);

std::string model_to_json(const std::vector<LearnedLocalOperator>& locals, int n);
std::vector<LearnedLocalOperator> model_from_json(const std::string& text, const std::string& source = "");

}  // namespace hamlearn
