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

#include <optional>
#include <span>
#include <vector>

#include "hamlearn/dataset.hpp"
#include "hamlearn/dense.hpp"
#include "hamlearn/hamiltonian.hpp"
#include "hamlearn/rng.hpp"

namespace hamlearn {

inline constexpr int kStateLimit = 10;
inline constexpr int kDensityLimit = 6;

struct NoiseModel {
  double gamma = 0;
};

DenseOperator hamiltonian_dense(const HamiltonianSpec& h);
/// e^{-i H_k t_k} for each step.
std::vector<DenseOperator> step_unitaries(const EvolutionPlan& plan);
/// U = e^{-iH_K t_K} ... e^{-iH_1 t_1}.
DenseOperator evolution_unitary(const EvolutionPlan& plan);

DenseVector evolve(const EvolutionPlan& plan, const DenseVector& psi);
DenseOperator exact_heisenberg(const EvolutionPlan& plan, const PauliTerm& o);
DenseOperator exact_heisenberg(const DenseOperator& u, const PauliTerm& o);

DenseVector product_state(std::span<const StabilizerLabel> labels);
/// Haar-random pure state.
DenseVector random_state(int n, CounterRng& rng);

/// Product depolarizing channel (1-g) rho + g Tr_q(rho) (x) I/2 on every qubit; self-adjoint.
DenseOperator depolarize(const DenseOperator& rho, double gamma);
DenseOperator noisy_evolve(const EvolutionPlan& plan, const NoiseModel& noise, const DenseOperator& rho);
/// Adjoint of the noisy evolution applied to o: the noisy counterpart of U^dagger o U.
DenseOperator noisy_heisenberg(const EvolutionPlan& plan, const NoiseModel& noise, const PauliTerm& o);

struct SampleOptions {
  int threads = 0;
};

/// Record l uses stream l: n labels (uniform of 6), n bases (uniform of 3), then one uniform per
/// qubit for sequential collapse in ascending qubit order.
Dataset sample_dataset(const EvolutionPlan& plan, std::uint64_t N, std::uint64_t seed,
                       const std::optional<NoiseModel>& noise = std::nullopt, const SampleOptions& opts = {});

}  // namespace hamlearn
