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
#include "hamlearn/learner.hpp"
#include "hamlearn/simulator.hpp"

namespace hamlearn {
namespace {

TruncationPlan order(const EvolutionPlan& p, int M) {
  TruncationOptions opts;
  opts.M_override = M;
  return truncation_order(p, 1e-3, opts);
}

TEST(Candidates, TwoQubitRegion) {
  EvolutionPlan p;
  p.n = 2;
  HamiltonianSpec h;
  h.n = 2;
  h.terms.push_back(make_term(2, {0, 1}, 1.0, "ZZ"));
  p.hams.push_back(h);
  p.times.push_back(0.05);
  const auto cands = candidate_paulis(interaction_graph(p), 0, order(p, 1));
  EXPECT_EQ(cands.size(), 15u);
  for (const auto& k : cands) EXPECT_FALSE(k.is_identity());
}

TEST(Candidates, CapacityEnforced) {
  const EvolutionPlan p = tfim_chain(4, 0.05);
  EXPECT_THROW(candidate_paulis(interaction_graph(p), 0, order(p, 8), 100), CapacityError);
}

TEST(Estimator, SingleShotValues) {
  Dataset ds;
  ds.n = 1;
  ds.resize(1);
  ds.bases[0] = static_cast<std::uint8_t>(Basis::X);
  ds.outcomes[0] = 1;
  EXPECT_DOUBLE_EQ(estimate_u(ds, 0, 0, Pauli::X), -3.0);
  EXPECT_DOUBLE_EQ(estimate_u(ds, 0, 0, Pauli::Z), 0.0);
  ds.outcomes[0] = 0;
  EXPECT_DOUBLE_EQ(estimate_u(ds, 0, 0, Pauli::X), 3.0);
}

TEST(Estimator, FastPathMatchesReference) {
  const EvolutionPlan p = tfim_chain(3, 0.05);
  const InteractionGraph g = interaction_graph(p);
  const TruncationPlan tp = order(p, 1);
  const Dataset ds = sample_dataset(p, 3000, 5);
  LearnConfig lc;
  lc.threshold = false;
  const auto locals = learn_local_operators(ds, g, tp, lc);
  ASSERT_EQ(locals.size(), 9u);
  for (const auto& op : locals) {
    EXPECT_EQ(local_index(op.qubit, op.base), static_cast<std::size_t>(&op - locals.data()));
    for (const auto& c : op.coefficients) {
      const CoefficientStats ref = estimate_coefficient(ds, c.key, op.qubit, op.base);
      EXPECT_NEAR(c.alpha, ref.alpha, 1e-12);
      EXPECT_NEAR(c.std_error, ref.std_error, 1e-12);
    }
  }
}

TEST(Estimator, IdentityDynamicsRecoverObservable) {
  const EvolutionPlan p = tfim_chain(2, 0.0);
  const Dataset ds = sample_dataset(p, 20000, 6);
  const auto locals = learn_local_operators(ds, interaction_graph(p), order(p, 1));
  for (const auto& op : locals) {
    const PauliKey self = PauliTerm::single(2, op.qubit, op.base).key();
    EXPECT_NEAR(op.estimate.coefficient(self).real(), 1.0, 0.1);
    for (const auto& [k, v] : op.estimate.terms()) {
      if (k != self) EXPECT_LT(std::abs(v), 0.15);
    }
  }
}

TEST(Estimator, ThresholdKeepsRawEstimates) {
  const EvolutionPlan p = tfim_chain(2, 0.05);
  const Dataset ds = sample_dataset(p, 2000, 7);
  const auto locals = learn_local_operators(ds, interaction_graph(p), order(p, 1));
  for (const auto& op : locals) {
    EXPECT_LE(op.estimate.size(), op.raw_estimate().size());
    for (const auto& c : op.coefficients) {
      EXPECT_EQ(c.kept, std::abs(c.alpha) >= 2 * c.std_error);
    }
  }
}

TEST(SampleSize, GrowsWithAccuracy) {
  LearnConfig a, b;
  b.epsilon = a.epsilon / 2;
  const SampleSize sa = sample_size(a, 3, 1, 2, 3, 1), sb = sample_size(b, 3, 1, 2, 3, 1);
  EXPECT_NEAR(static_cast<double>(sb.N) / sa.N, 4.0, 1e-3);
  LearnConfig o;
  o.N_override = 123;
  EXPECT_EQ(sample_size(o, 3, 1, 2, 3, 1).N, 123u);
  EXPECT_TRUE(sample_size(a, 64, 3, 4, 10, 8).saturated);
}

TEST(ModelJson, RoundTrip) {
  const EvolutionPlan p = tfim_chain(2, 0.05);
  const auto locals = learn_local_operators(sample_dataset(p, 1000, 8), interaction_graph(p), order(p, 1));
  const std::string text = model_to_json(locals, 2);
  const auto back = model_from_json(text);
  ASSERT_EQ(back.size(), locals.size());
  EXPECT_EQ(model_to_json(back, 2), text);
  EXPECT_THROW(model_from_json("{\"format\": \"other\"}"), ParseError);
}

}  // namespace
}  // namespace hamlearn
