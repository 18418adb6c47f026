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
#include <numbers>
#include <set>

#include "hamlearn/dataset.hpp"
#include "hamlearn/digest.hpp"
#include "hamlearn/errors.hpp"
#include "hamlearn/rng.hpp"
#include "hamlearn/simulator.hpp"

namespace hamlearn {
namespace {

EvolutionPlan single_term(const std::string& word, double t) {
  EvolutionPlan p;
  p.n = static_cast<int>(word.size());
  HamiltonianSpec h;
  h.n = p.n;
  std::vector<int> qs;
  for (int q = 0; q < p.n; ++q) qs.push_back(q);
  h.terms.push_back(make_term(p.n, qs, 1.0, word));
  p.hams.push_back(h);
  p.times.push_back(t);
  return p;
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  CounterRng a(5, 3), b(5, 3), c(5, 4);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 100u);
}

TEST(Rng, BoundedIsUniform) {
  CounterRng r(6, 0);
  std::vector<int> counts(6, 0);
  constexpr int kDraws = 60000;
  for (int k = 0; k < kDraws; ++k) ++counts[r.bounded(6)];
  double chi2 = 0;
  for (int c : counts) chi2 += std::pow(c - kDraws / 6.0, 2) / (kDraws / 6.0);
  EXPECT_LT(chi2, 20.5);  // 5 dof, p ~ 0.001
}

TEST(Rng, NormalMoments) {
  CounterRng r(7, 0);
  double s = 0, s2 = 0;
  constexpr int kDraws = 100000;
  for (int k = 0; k < kDraws; ++k) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / kDraws, 0.0, 0.02);
  EXPECT_NEAR(s2 / kDraws, 1.0, 0.02);
}

TEST(Simulator, ZeroTimeIsIdentity) {
  const EvolutionPlan p = single_term("XZ", 0.0);
  EXPECT_LT((evolution_unitary(p) - DenseOperator::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Simulator, EigenstatePicksUpPhase) {
  const EvolutionPlan p = single_term("Z", std::numbers::pi / 2);
  DenseVector psi = DenseVector::Zero(2);
  psi(0) = 1;
  const DenseVector out = evolve(p, psi);
  EXPECT_NEAR(std::abs(out(0) - Complex(0, -1)), 0.0, 1e-12);
}

TEST(Simulator, ProductStatesAreEigenstates) {
  for (int s = 0; s < 6; ++s) {
    const auto l = static_cast<StabilizerLabel>(s);
    const std::vector<StabilizerLabel> ls = {l};
    const DenseVector psi = product_state(ls);
    const DenseOperator p = to_dense(PauliTerm::single(1, 0, label_axis(l)));
    EXPECT_LT((p * psi - label_sign(l) * psi).norm(), 1e-12);
  }
}

TEST(Simulator, DepolarizeLimits) {
  CounterRng r(8, 0);
  const DenseVector psi = random_state(2, r);
  const DenseOperator rho = psi * psi.adjoint();
  EXPECT_LT((depolarize(rho, 0.0) - rho).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((depolarize(rho, 1.0) - DenseOperator::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff(), 1e-14);
  // Single-qubit Bloch vector shrinks by 1 - gamma.
  const DenseOperator z = to_dense(PauliTerm::parse("ZI"));
  EXPECT_NEAR((z * depolarize(rho, 0.3)).trace().real(), 0.7 * (z * rho).trace().real(), 1e-12);
  EXPECT_THROW(depolarize(rho, 1.5), ValueError);
}

TEST(Simulator, NoisyHeisenbergIsAdjointOfNoisyEvolution) {
  const EvolutionPlan p = tfim_chain(2, 0.3);
  CounterRng r(9, 0);
  const DenseVector psi = random_state(2, r);
  const DenseOperator rho = psi * psi.adjoint();
  const PauliTerm o = PauliTerm::parse("XZ");
  const NoiseModel noise{0.1};
  const double schrodinger = (to_dense(o) * noisy_evolve(p, noise, rho)).trace().real();
  const double heisenberg = (noisy_heisenberg(p, noise, o) * rho).trace().real();
  EXPECT_NEAR(schrodinger, heisenberg, 1e-12);
}

TEST(Simulator, CapacityLimits) {
  EXPECT_THROW(evolution_unitary(tfim_chain(11, 0.1)), CapacityError);
  EXPECT_THROW(sample_dataset(tfim_chain(7, 0.1), 10, 1, NoiseModel{0.1}), CapacityError);
}

TEST(Sampling, OutcomeFrequenciesFollowBornRule) {
  // H = X on one qubit for time t: <Z> after |0> is cos(2t).
  const double t = 0.4;
  const EvolutionPlan p = single_term("X", t);
  const Dataset ds = sample_dataset(p, 60000, 3);
  double sum = 0;
  int count = 0;
  for (std::uint64_t l = 0; l < ds.size(); ++l) {
    if (ds.label(l, 0) == StabilizerLabel::ZPlus && ds.basis(l, 0) == Basis::Z) {
      sum += ds.outcome_sign(l, 0);
      ++count;
    }
  }
  ASSERT_GT(count, 2000);
  EXPECT_NEAR(sum / count, std::cos(2 * t), 4 / std::sqrt(static_cast<double>(count)));
}

TEST(Sampling, YBasisMeasurement) {
  // |+i> measured in the Y basis is always +1.
  const EvolutionPlan p = single_term("Z", 0.0);
  const Dataset ds = sample_dataset(p, 3000, 4);
  for (std::uint64_t l = 0; l < ds.size(); ++l) {
    if (ds.label(l, 0) == StabilizerLabel::YPlus && ds.basis(l, 0) == Basis::Y) EXPECT_EQ(ds.outcome_sign(l, 0), 1);
    if (ds.label(l, 0) == StabilizerLabel::XMinus && ds.basis(l, 0) == Basis::X) EXPECT_EQ(ds.outcome_sign(l, 0), -1);
  }
}

TEST(Sampling, ThreadCountDoesNotChangeRecords) {
  const EvolutionPlan p = tfim_chain(3, 0.05);
  const Dataset a = sample_dataset(p, 500, 9, std::nullopt, SampleOptions{1});
  const Dataset b = sample_dataset(p, 500, 9, std::nullopt, SampleOptions{4});
  EXPECT_EQ(encode_dataset(a), encode_dataset(b));
  const Dataset c = sample_dataset(p, 500, 10, std::nullopt, SampleOptions{4});
  EXPECT_NE(encode_dataset(a), encode_dataset(c));
}

TEST(DatasetFormat, EncodeDecodeRoundTrip) {
  const Dataset a = sample_dataset(tfim_chain(5, 0.05), 300, 2);
  const auto bytes = encode_dataset(a);
  EXPECT_EQ(bytes.size(), 72u + 300u * 4u);
  const Dataset b = decode_dataset(bytes);
  EXPECT_EQ(b.n, 5);
  EXPECT_EQ(b.labels, a.labels);
  EXPECT_EQ(b.bases, a.bases);
  EXPECT_EQ(b.outcomes, a.outcomes);
  EXPECT_EQ(b.plan_digest, sha256(serialize_plan(tfim_chain(5, 0.05))));
}

TEST(DatasetFormat, RejectsCorruption) {
  auto bytes = encode_dataset(sample_dataset(tfim_chain(2, 0.05), 10, 2));
  auto bad_magic = bytes;
  bad_magic[7] = '2';
  EXPECT_THROW(decode_dataset(bad_magic), ParseError);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(decode_dataset(truncated), ParseError);
  EXPECT_THROW(read_dataset("/nonexistent/dataset.bin"), IoError);
}

TEST(Digest, KnownVector) {
  EXPECT_EQ(to_hex(sha256(std::string_view("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace hamlearn
