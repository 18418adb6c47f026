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

#include <cmath>

#include "hamlearn/errors.hpp"
#include "hamlearn/reconstruct.hpp"
#include "hamlearn/simulator.hpp"
#include "support/random_plans.hpp"

namespace hamlearn {
namespace {

TEST(Sewing, ExactLocalsReproduceChannel) {
  CounterRng rng(41, 0);
  const EvolutionPlan plan = testing::random_plan(2, 2, 0.7, rng);
  const DenseOperator u = evolution_unitary(plan);
  const LearnedChannel ch = sew_channel(oracle_locals(u, 2), 2);
  EXPECT_LT(phase_min_distance(ch.dense(), sewed_target(u)), 1e-9);
  const DenseVector psi = random_state(2, rng);
  const DenseOperator rho = psi * psi.adjoint();
  EXPECT_LT((apply_channel(ch, rho) - u * rho * u.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Sewing, MissingLocalRejected) {
  const EvolutionPlan plan = tfim_chain(2, 0.1);
  auto locals = oracle_locals(plan);
  locals.pop_back();
  EXPECT_THROW(sew_channel(locals, 2), Error);
}

TEST(Sewing, NoisyOracleLocalsAreContractions) {
  const EvolutionPlan plan = tfim_chain(2, 0.1);
  const auto ideal = oracle_locals(plan);
  const auto noisy = oracle_locals(plan, NoiseModel{0.2});
  for (std::size_t k = 0; k < ideal.size(); ++k) {
    EXPECT_LT(spectral_norm(to_dense(noisy[k].estimate)), spectral_norm(to_dense(ideal[k].estimate)));
  }
}

TEST(Errors, ExactLocalsGiveZeroError) {
  const EvolutionPlan plan = tfim_chain(2, 0.1);
  const auto locals = oracle_locals(plan);
  const ErrorReport er = reconstruction_error(sew_channel(locals, 2), locals, plan, 5, 1);
  EXPECT_LT(er.max_local_error(), 1e-10);
  EXPECT_LT(er.max_trace_distance, 1e-9);
  EXPECT_LT(er.surrogate_diamond, 1e-8);
}

TEST(Compile, ExactFactorsAreFixedPoints) {
  const EvolutionPlan plan = tfim_chain(2, 0.2);
  const LearnedChannel ch = sew_channel(oracle_locals(plan), 2);
  const CompiledChannel cc = compile_unitary(ch, 2, 0.01);
  EXPECT_LT(phase_min_distance(compiled_dense(cc, 2), ch.dense()), 1e-8);
  EXPECT_THROW(compile_unitary(ch, 3), ValueError);
}

TEST(Compile, TrotterDepthFormula) {
  // pi/2 * 3L * 2 / eps for p = 1.
  EXPECT_EQ(trotter_local_depth(10, 0.1, 1), static_cast<std::uint64_t>(std::ceil(M_PI / 2 * 60 / 0.1)));
  EXPECT_LT(trotter_local_depth(10, 0.1, 2), trotter_local_depth(10, 0.1, 1));
  const TrotterDepth td = trotter_depth(sew_channel(oracle_locals(tfim_chain(3, 0.05)), 3), 0.1, 1);
  EXPECT_EQ(td.per_local.size(), 3u);
  EXPECT_GE(td.layers, 1);
  EXPECT_GE(td.total, td.max_local);
}

}  // namespace
}  // namespace hamlearn
