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

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "hamlearn/pauli.hpp"

namespace hamlearn {

using DenseOperator = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Largest qubit count for which dense operators are built.
inline constexpr int kDenseLimit = 10;
/// Sewed objects live on 2n qubits.
inline constexpr int kSewedDenseLimit = 20;

DenseOperator to_dense(const PauliSum& p, int limit = kDenseLimit);
DenseOperator to_dense(const PauliTerm& p, int limit = kDenseLimit);
/// Pauli expansion by normalized trace; coefficients below `prune` are dropped.
PauliSum from_dense(const DenseOperator& a, int n, double prune = kDefaultPrune);

/// Applies a single Pauli string (phase included) to a state vector.
DenseVector apply_pauli(const PauliTerm& p, const DenseVector& psi);

int qubits_of_dim(Eigen::Index dim);
bool is_unitary(const DenseOperator& u, double tol = 1e-10);
bool is_hermitian(const DenseOperator& a, double tol = 1e-10);

double spectral_norm(const DenseOperator& a);
/// Sum of singular values over two, for Hermitian differences of states.
double trace_distance(const DenseOperator& rho, const DenseOperator& sigma);

/// f(A) for Hermitian A via eigendecomposition.
DenseOperator hermitian_function(const DenseOperator& a, const std::function<Complex(double)>& f);
/// exp(-i t H) for Hermitian H.
DenseOperator expm_hermitian(const DenseOperator& h, double t);

/// min over phi of ||e^{i phi} u - v|| in spectral norm.
double phase_min_distance(const DenseOperator& u, const DenseOperator& v);

/// Lifts an operator on the listed qubits (local qubit k = qubits[k]) to n qubits.
DenseOperator embed_operator(const DenseOperator& local, std::span<const int> qubits, int n);

/// Restricts a PauliSum to its support and re-indexes it; `qubits` receives the original indices.
PauliSum compress_support(const PauliSum& p, std::vector<int>& qubits);

/// Swap of qubit blocks [0, n) and [n, 2n) on 2n qubits.
DenseOperator swap_blocks(int n);

/// Partial trace over the qubits with index >= keep.
DenseOperator trace_out_high(const DenseOperator& m, int keep, int total);

}  // namespace hamlearn
