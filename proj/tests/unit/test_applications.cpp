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

#include "hamlearn/applications.hpp"
#include "hamlearn/errors.hpp"
#include "hamlearn/reconstruct.hpp"
#include "hamlearn/simulator.hpp"

namespace hamlearn {
namespace {

TEST(ClassicalState, LabelsExpandToDenseProductState) {
  const std::vector<StabilizerLabel> ls = {StabilizerLabel::XPlus, StabilizerLabel::ZMinus, StabilizerLabel::YMinus};
  const ClassicalState phi = ClassicalState::from_labels(ls);
  EXPECT_EQ(phi.configs.size(), 4u);
  EXPECT_LT((phi.dense() - product_state(ls)).norm(), 1e-12);
  ClassicalState bad{1, {{0, 1.0}, {1, 1.0}}};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(ClassicalState, ExpectationMatchesDense) {
  CounterRng rng(51, 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<StabilizerLabel> ls(3);
    for (auto& l : ls) l = static_cast<StabilizerLabel>(rng.bounded(6));
    const ClassicalState phi = ClassicalState::from_labels(ls);
    PauliSum p(3);
    p.add(PauliTerm(3, rng.next_u64() & 7, rng.next_u64() & 7), 0.7);
    p.add(PauliTerm(3, rng.next_u64() & 7, rng.next_u64() & 7), -0.2);
    const DenseVector v = phi.dense();
    EXPECT_NEAR(std::abs(expectation(phi, p) - (v.adjoint() * to_dense(p) * v)(0, 0)), 0.0, 1e-12);
  }
}

TEST(MeanValue, ExactLocalsGiveExactPrediction) {
  const EvolutionPlan plan = tfim_chain(3, 0.3);
  const DenseOperator u = evolution_unitary(plan);
  const auto locals = oracle_locals(u, 3);
  const std::vector<StabilizerLabel> ls = {StabilizerLabel::ZPlus, StabilizerLabel::XMinus, StabilizerLabel::YPlus};
  const ClassicalState phi = ClassicalState::from_labels(ls);
  PauliSum o(3);
  o.add(PauliTerm::parse("XZI"), 0.5);
  o.add(PauliTerm::parse("IYY"), -1.0);
  const DenseVector out = u * phi.dense();
  const MeanPrediction pred = predict_mean_value(locals, phi, o);
  EXPECT_NEAR(pred.value, (out.adjoint() * to_dense(o) * out)(0, 0).real(), 1e-10);
  EXPECT_EQ(pred.std_error, 0.0);
}

TEST(Strips, PartitionSeparatesSameRegion) {
  std::vector<std::vector<int>> coords;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 8; ++c) coords.push_back({c, r});
  const Region2D part = strip_partition(coords, 1);
  EXPECT_EQ(part.strip_width, 2);
  EXPECT_EQ(part.region[0], 0);
  EXPECT_EQ(part.region[2], 1);
  EXPECT_EQ(part.region[4], 0);
  EXPECT_GE(min_same_region_separation(part, coords), 3);
}

TEST(MonteCarlo, EnumerationIdentities) {
  const EvolutionPlan plan = tfim_grid(2, 2, 0.1);
  const auto locals = oracle_locals(evolution_unitary(plan), 4);
  const Region2D part = strip_partition(*plan.coords, 1);
  const MonteCarloResult mc = mc_sew_2d(locals, 4, std::vector<Pauli>(4, Pauli::Z), part, 2000, 3);
  EXPECT_LT(std::abs(mc.enumerated_mean - mc.exact), 1e-12);
  EXPECT_NEAR(mc.variance_enumerated, mc.variance_formula, 1e-9);
  EXPECT_LT(std::abs(mc.estimate - mc.exact), 4 * mc.std_error + 1e-12);
}

TEST(Classifier, RecoversLinearModel) {
  const std::vector<PauliKey> basis = {PauliTerm::parse("ZI").key(), PauliTerm::parse("XX").key()};
  std::vector<ClassicalState> xs;
  Eigen::VectorXd y(36);
  int k = 0;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const std::vector<StabilizerLabel> ls = {static_cast<StabilizerLabel>(a), static_cast<StabilizerLabel>(b)};
      xs.push_back(ClassicalState::from_labels(ls));
      y(k++) = 0.3 * expect_product_state(basis[0], ls) - 0.8 * expect_product_state(basis[1], ls);
    }
  }
  const ClassifierModel m = train_classifier(xs, y, basis);
  EXPECT_FALSE(m.ridge);
  EXPECT_NEAR(m.weights(0), 0.3, 1e-12);
  EXPECT_NEAR(m.weights(1), -0.8, 1e-12);
  EXPECT_NEAR(m.predict(xs[7]), y(7), 1e-12);
}

TEST(Classifier, RankDeficientFallsBackToRidge) {
  const std::vector<PauliKey> basis = {PauliTerm::parse("Z").key(), PauliTerm::parse("X").key()};
  std::vector<ClassicalState> xs = {ClassicalState::from_labels(std::vector<StabilizerLabel>{StabilizerLabel::ZPlus}),
                                    ClassicalState::from_labels(std::vector<StabilizerLabel>{StabilizerLabel::ZMinus})};
  Eigen::VectorXd y(2);
  y << 1, -1;
  const ClassifierModel m = train_classifier(xs, y, basis);
  EXPECT_TRUE(m.ridge);
  EXPECT_FALSE(m.warning.empty());
}

}  // namespace
}  // namespace hamlearn
