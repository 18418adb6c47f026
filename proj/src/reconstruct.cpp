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

#include "hamlearn/reconstruct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "hamlearn/errors.hpp"

namespace hamlearn {

namespace {

constexpr int kSewedQubitLimit = 12;

}  // namespace

LearnedChannel::LearnedChannel(int n, std::vector<PauliSum> factors) : n_(n), factors_(std::move(factors)) {
  if (static_cast<int>(factors_.size()) != n) throw DimensionError("sewed channel needs one factor per qubit");
  for (const auto& f : factors_) {
    if (f.num_qubits() != 2 * n) throw DimensionError("sewed factor must act on 2n qubits");
  }
}

const DenseOperator& LearnedChannel::dense() const {
  if (!dense_) {
    if (2 * n_ > kSewedQubitLimit) throw CapacityError("dense sewed operator on " + std::to_string(2 * n_) + " qubits exceeds limit");
    DenseOperator v = swap_blocks(n_);
    for (const auto& f : factors_) v = v * to_dense(f, kSewedQubitLimit);
    dense_ = std::move(v);
  }
  return *dense_;
}

LearnedChannel sew_channel(const std::vector<LearnedLocalOperator>& locals, int n, bool use_raw) {
  if (2 * n > kMaxQubits) throw CapacityError("sewing needs 2n <= 64 qubits");
  std::vector<const LearnedLocalOperator*> slot(3 * static_cast<std::size_t>(n), nullptr);
  for (const auto& op : locals) {
    if (op.qubit < 0 || op.qubit >= n || op.base == Pauli::I) throw DimensionError("local operator outside the register");
    if (op.estimate.num_qubits() != n) throw DimensionError("local operator has the wrong qubit count");
    slot[local_index(op.qubit, op.base)] = &op;
  }
  std::vector<PauliSum> factors;
  for (int i = 0; i < n; ++i) {
    PauliSum f(2 * n);
    f.add(PauliKey{}, 0.5);
    for (Pauli o : {Pauli::X, Pauli::Y, Pauli::Z}) {
      const LearnedLocalOperator* op = slot[local_index(i, o)];
      if (!op) throw ValueError("missing learned local for qubit " + std::to_string(i) + " observable " + pauli_char(o));
      const PauliSum v = (use_raw ? op->raw_estimate() : op->estimate).embedded(2 * n);
      const PauliTerm partner = PauliTerm::single(2 * n, n + i, o);
      for (const auto& [key, c] : v.terms()) {
        // V_{O_i} and O_{n+i} act on disjoint qubits, so the product has no phase.
        f.add(PauliKey{key.x | partner.x_mask(), key.z | partner.z_mask()}, 0.5 * c);
      }
    }
    factors.push_back(std::move(f));
  }
  return LearnedChannel(n, std::move(factors));
}

std::vector<LearnedLocalOperator> oracle_locals(const DenseOperator& u, int n) {
  std::vector<LearnedLocalOperator> out;
  for (int i = 0; i < n; ++i) {
    for (Pauli o : {Pauli::X, Pauli::Y, Pauli::Z}) {
      LearnedLocalOperator op;
      op.qubit = i;
      op.base = o;
      op.estimate = from_dense(exact_heisenberg(u, PauliTerm::single(n, i, o)), n).hermitian_part(1e-9);
      for (const auto& [key, c] : op.estimate.terms()) op.coefficients.push_back({key, c.real(), 0.0, true});
      out.push_back(std::move(op));
    }
  }
  return out;
}

std::vector<LearnedLocalOperator> oracle_locals(const EvolutionPlan& plan, const std::optional<NoiseModel>& noise) {
  if (!noise) return oracle_locals(evolution_unitary(plan), plan.n);
  std::vector<LearnedLocalOperator> out;
  for (int i = 0; i < plan.n; ++i) {
    for (Pauli o : {Pauli::X, Pauli::Y, Pauli::Z}) {
      LearnedLocalOperator op;
      op.qubit = i;
      op.base = o;
      op.estimate = from_dense(noisy_heisenberg(plan, *noise, PauliTerm::single(plan.n, i, o)), plan.n).hermitian_part(1e-9);
      for (const auto& [key, c] : op.estimate.terms()) op.coefficients.push_back({key, c.real(), 0.0, true});
      out.push_back(std::move(op));
    }
  }
  return out;
}

DenseOperator sewed_target(const DenseOperator& u) {
  const Eigen::Index d = u.rows();
  const DenseOperator ud = u.adjoint();
  DenseOperator out(d * d, d * d);
  // Index = low + d * high; the high register carries U^dagger.
  for (Eigen::Index hr = 0; hr < d; ++hr) {
    for (Eigen::Index hc = 0; hc < d; ++hc) out.block(hr * d, hc * d, d, d) = ud(hr, hc) * u;
  }
  return out;
}

DenseOperator apply_channel(const LearnedChannel& ch, const DenseOperator& rho) {
  const int n = ch.num_qubits();
  const Eigen::Index d = Eigen::Index{1} << n;
  if (rho.rows() != d || rho.cols() != d) throw DimensionError("apply_channel: state size mismatch");
  const DenseOperator& v = ch.dense();
  DenseOperator embedded = DenseOperator::Zero(d * d, d * d);
  for (Eigen::Index h = 0; h < d; ++h) embedded.block(h * d, h * d, d, d) = rho / static_cast<double>(d);
  return trace_out_high(v * embedded * v.adjoint(), n, 2 * n);
}

double ErrorReport::max_local_error() const {
  double m = 0;
  for (double e : per_local_inf_norms) m = std::max(m, e);
  return m;
}

ErrorReport reconstruction_error(const LearnedChannel& ch, const std::vector<LearnedLocalOperator>& locals,
                                 const EvolutionPlan& plan, int trials, std::uint64_t seed,
                                 const std::optional<TruncationPlan>& trunc) {
  const int n = plan.n;
  if (ch.num_qubits() != n) throw DimensionError("channel and plan differ in qubit count");
  const DenseOperator u = evolution_unitary(plan);
  ErrorReport rep;
  rep.surrogate_diamond = phase_min_distance(ch.dense(), sewed_target(u));
  for (int k = 0; k < trials; ++k) {
    CounterRng rng = substream(seed, StreamTag::TraceStates, static_cast<std::uint64_t>(k));
    const DenseVector psi = random_state(n, rng);
    const DenseOperator rho = psi * psi.adjoint();
    const DenseVector out = u * psi;
    rep.max_trace_distance = std::max(rep.max_trace_distance, trace_distance(apply_channel(ch, rho), out * out.adjoint()));
  }
  for (const auto& op : locals) {
    const DenseOperator exact = exact_heisenberg(u, PauliTerm::single(n, op.qubit, op.base));
    rep.per_local_inf_norms.push_back(spectral_norm(to_dense(op.estimate) - exact));
    double var = 0;
    for (const auto& c : op.coefficients) var += c.std_error * c.std_error;
    rep.sample_stderr_budget = std::max(rep.sample_stderr_budget, std::sqrt(var));
  }
  if (trunc) rep.truncation_bound = truncation_bound(*trunc);
  return rep;
}

CompiledChannel compile_unitary(const LearnedChannel& ch, int p, double eps) {
  if (p != 1 && p != 2 && p != 4) throw ValueError("Trotter order must be 1, 2 or 4");
  CompiledChannel out;
  for (const auto& f : ch.factors()) {
    CompiledLocal cl;
    const PauliSum local = compress_support(f, cl.qubits);
    if (static_cast<int>(cl.qubits.size()) > kLocalCompileLimit) throw CapacityError("local factor support too large to compile");
    cl.W = hermitian_function(to_dense(local, kLocalCompileLimit),
                              [](double lam) { return std::exp(Complex(0, -std::numbers::pi / 2 * (lam - 1))); });
    out.locals.push_back(std::move(cl));
  }
  out.plan.p = p;
  out.plan.eps = eps;
  out.plan.depth = trotter_depth(ch, eps, p).total;
  return out;
}

DenseOperator compiled_dense(const CompiledChannel& c, int n) {
  if (2 * n > kSewedQubitLimit) throw CapacityError("compiled product too large for dense evaluation");
  DenseOperator v = swap_blocks(n);
  for (const auto& cl : c.locals) v = v * embed_operator(cl.W, cl.qubits, 2 * n);
  return v;
}

std::uint64_t trotter_local_depth(std::size_t L, double eps, int p) {
  if (p != 1 && p != 2 && p != 4) throw ValueError("Trotter order must be 1, 2 or 4");
  if (!(eps > 0)) throw ValueError("Trotter error target must be positive");
  const double inner = std::pow(3.0 * static_cast<double>(L), p) * std::pow(2.0, p);
  return static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 2 * std::pow(inner, 1.0 / p) / std::pow(eps, 1.0 / p)));
}

TrotterDepth trotter_depth(const LearnedChannel& ch, double eps, int p) {
  TrotterDepth td;
  std::vector<std::uint64_t> supports;
  for (const auto& f : ch.factors()) {
    std::size_t L = f.size();
    if (f.coefficient(PauliKey{}) != Complex{}) --L;
    td.per_local.push_back(trotter_local_depth(L, eps, p));
    td.max_local = std::max(td.max_local, td.per_local.back());
    supports.push_back(f.support_mask());
  }
  // Greedy layering: factors with disjoint supports share a layer.
  std::vector<std::uint64_t> layer_masks;
  for (auto s : supports) {
    bool placed = false;
    for (auto& m : layer_masks) {
      if ((m & s) == 0) {
        m |= s;
        placed = true;
        break;
      }
    }
    if (!placed) layer_masks.push_back(s);
  }
  td.layers = static_cast<int>(layer_masks.size());
  td.total = td.max_local * static_cast<std::uint64_t>(std::max(1, td.layers));
  return td;
}

}  // namespace hamlearn
