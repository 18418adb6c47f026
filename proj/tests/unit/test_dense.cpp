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

#include "hamlearn/dense.hpp"
#include "hamlearn/errors.hpp"
#include "hamlearn/rng.hpp"

namespace hamlearn {
namespace {

TEST(Dense, ExpmMatchesTaylorSeries) {
  CounterRng rng(21, 0);
  DenseOperator h = DenseOperator::Random(4, 4);
  h = (h + h.adjoint()).eval();
  const double t = 0.3;
  DenseOperator series = DenseOperator::Identity(4, 4), term = DenseOperator::Identity(4, 4);
  for (int k = 1; k < 40; ++k) {
    term = term * h * Complex(0, -t) / static_cast<double>(k);
    series += term;
  }
  EXPECT_LT((expm_hermitian(h, t) - series).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(is_unitary(expm_hermitian(h, t)));
}

TEST(Dense, PhaseMinDistanceIgnoresGlobalPhase) {
  DenseOperator u = DenseOperator::Random(8, 8);
  EXPECT_LT(phase_min_distance(u * std::exp(Complex(0, 1.234)), u), 1e-9);
  DenseOperator v = u;
  v(0, 0) += 0.1;
  EXPECT_GT(phase_min_distance(u, v), 1e-3);
}

TEST(Dense, SpectralNormOfDiagonal) {
  DenseOperator d = DenseOperator::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = Complex(0, -2);
  EXPECT_NEAR(spectral_norm(d), 2.0, 1e-12);
}

TEST(Dense, TraceDistanceOfOrthogonalStates) {
  DenseOperator a = DenseOperator::Zero(2, 2), b = DenseOperator::Zero(2, 2);
  a(0, 0) = 1;
  b(1, 1) = 1;
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-12);
}

TEST(Dense, SwapBlocksExchangesHalves) {
  const DenseOperator s = swap_blocks(2);
  // |q0 q1 q2 q3> = |1 0 0 1> (index 1 + 8) maps to |0 1 1 0> (index 2 + 4).
  EXPECT_EQ(s(6, 9), Complex(1.0));
  EXPECT_TRUE(is_unitary(s));
  EXPECT_LT((s * s - DenseOperator::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Dense, EmbedThenTraceOut) {
  DenseOperator a = DenseOperator::Random(2, 2);
  const std::vector<int> qs = {0};
  const DenseOperator big = embed_operator(a, qs, 3);
  EXPECT_LT((trace_out_high(big, 1, 3) - 4.0 * a).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dense, CompressSupportReindexes) {
  PauliSum p(PauliTerm::parse("IZIX"));
  std::vector<int> qs;
  const PauliSum c = compress_support(p, qs);
  EXPECT_EQ(qs, (std::vector<int>{1, 3}));
  EXPECT_EQ(c.coefficient(PauliTerm::parse("ZX").key()), Complex(1.0));
}

TEST(Dense, QubitsOfDimRejectsNonPowers) {
  EXPECT_EQ(qubits_of_dim(16), 4);
  EXPECT_THROW(qubits_of_dim(12), Error);
}

}  // namespace
}  // namespace hamlearn
