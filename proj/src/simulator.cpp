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

#include "hamlearn/simulator.hpp"

#include <array>
#include <cmath>

#include "hamlearn/digest.hpp"
#include "hamlearn/errors.hpp"
#include "hamlearn/parallel.hpp"

namespace hamlearn {

namespace {

using Mat2 = Eigen::Matrix2cd;

void check_state_limit(int n) {
  if (n > kStateLimit) throw CapacityError("state vector on " + std::to_string(n) + " qubits exceeds limit " + std::to_string(kStateLimit));
}

void check_density_limit(int n) {
  if (n > kDensityLimit) throw CapacityError("density matrix on " + std::to_string(n) + " qubits exceeds limit " + std::to_string(kDensityLimit));
}

const Mat2& basis_rotation(Basis b) {
  static const std::array<Mat2, 3> table = [] {
    const double s = 1 / std::sqrt(2.0);
    Mat2 h;
    h << s, s, s, -s;
    Mat2 sdag;
    sdag << 1, 0, 0, Complex(0, -1);
    return std::array<Mat2, 3>{h, h * sdag, Mat2::Identity()};
  }();
  return table[static_cast<int>(b)];
}

void apply_1q(DenseVector& psi, int q, const Mat2& g) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & bit) continue;
    const Complex a0 = psi(c), a1 = psi(c | bit);
    psi(c) = g(0, 0) * a0 + g(0, 1) * a1;
    psi(c | bit) = g(1, 0) * a0 + g(1, 1) * a1;
  }
}

/// rho -> g rho g^dagger on qubit q.
void conjugate_1q(DenseOperator& rho, int q, const Mat2& g) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & bit) continue;
      const Complex a0 = rho(r, col), a1 = rho(r | bit, col);
      rho(r, col) = g(0, 0) * a0 + g(0, 1) * a1;
      rho(r | bit, col) = g(1, 0) * a0 + g(1, 1) * a1;
    }
  }
  const Mat2 gc = g.conjugate();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (c & bit) continue;
      const Complex a0 = rho(r, c), a1 = rho(r, c | bit);
      rho(r, c) = gc(0, 0) * a0 + gc(0, 1) * a1;
      rho(r, c | bit) = gc(1, 0) * a0 + gc(1, 1) * a1;
    }
  }
}

/// Samples outcome bits qubit by qubit from a computational-basis distribution.
std::uint64_t collapse(std::vector<double>& probs, int n, CounterRng& rng) {
  std::uint64_t bits = 0;
  const std::size_t dim = probs.size();
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    double p0 = 0, total = 0;
    for (std::size_t c = 0; c < dim; ++c) {
      total += probs[c];
      if (!(c & bit)) p0 += probs[c];
    }
    const bool one = rng.uniform() * total >= p0;
    if (one) bits |= bit;
    for (std::size_t c = 0; c < dim; ++c) {
      if (((c & bit) != 0) != one) probs[c] = 0;
    }
  }
  return bits;
}

}  // namespace

DenseOperator hamiltonian_dense(const HamiltonianSpec& h) {
  check_state_limit(h.n);
  return to_dense(h.as_sum(), kStateLimit);
}

std::vector<DenseOperator> step_unitaries(const EvolutionPlan& plan) {
  std::vector<DenseOperator> out;
  for (int k = 0; k < plan.num_steps(); ++k) out.push_back(expm_hermitian(hamiltonian_dense(plan.hams[k]), plan.times[k]));
  return out;
}

DenseOperator evolution_unitary(const EvolutionPlan& plan) {
  check_state_limit(plan.n);
  DenseOperator u = DenseOperator::Identity(Eigen::Index{1} << plan.n, Eigen::Index{1} << plan.n);
  for (const auto& uk : step_unitaries(plan)) u = uk * u;
  return u;
}

DenseVector evolve(const EvolutionPlan& plan, const DenseVector& psi) {
  check_state_limit(plan.n);
  if (psi.size() != (Eigen::Index{1} << plan.n)) throw DimensionError("evolve: state size mismatch");
  DenseVector out = psi;
  for (const auto& uk : step_unitaries(plan)) out = uk * out;
  return out;
}

DenseOperator exact_heisenberg(const DenseOperator& u, const PauliTerm& o) {
  if (u.rows() != (Eigen::Index{1} << o.num_qubits())) throw DimensionError("exact_heisenberg: size mismatch");
  return u.adjoint() * to_dense(o, kStateLimit) * u;
}

DenseOperator exact_heisenberg(const EvolutionPlan& plan, const PauliTerm& o) {
  if (o.num_qubits() != plan.n) throw DimensionError("observable and plan differ in qubit count");
  return exact_heisenberg(evolution_unitary(plan), o);
}

DenseVector product_state(std::span<const StabilizerLabel> labels) {
  const int n = static_cast<int>(labels.size());
  check_state_limit(n);
  const double s = 1 / std::sqrt(2.0);
  std::vector<std::array<Complex, 2>> factors;
  for (auto l : labels) {
    switch (l) {
      case StabilizerLabel::ZPlus: factors.push_back({1.0, 0.0}); break;
      case StabilizerLabel::ZMinus: factors.push_back({0.0, 1.0}); break;
      case StabilizerLabel::XPlus: factors.push_back({s, s}); break;
      case StabilizerLabel::XMinus: factors.push_back({s, -s}); break;
      case StabilizerLabel::YPlus: factors.push_back({s, Complex(0, s)}); break;
      case StabilizerLabel::YMinus: factors.push_back({s, Complex(0, -s)}); break;
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseVector psi(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Complex a = 1;
    for (int q = 0; q < n; ++q) a *= factors[q][(c >> q) & 1];
    psi(c) = a;
  }
  return psi;
}

DenseVector random_state(int n, CounterRng& rng) {
  check_state_limit(n);
  DenseVector psi(Eigen::Index{1} << n);
  for (Eigen::Index c = 0; c < psi.size(); ++c) {
    const double re = rng.normal();
    const double im = rng.normal();
    psi(c) = Complex(re, im);
  }
  return psi / psi.norm();
}

DenseOperator depolarize(const DenseOperator& rho, double gamma) {
  if (gamma < 0 || gamma > 1) throw ValueError("depolarizing strength must lie in [0, 1]");
  const int n = qubits_of_dim(rho.rows());
  DenseOperator out = rho;
  const Eigen::Index dim = rho.rows();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    DenseOperator next(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        Complex v = (1 - gamma) * out(r, c);
        if (((r ^ c) & bit) == 0) {
          v += 0.5 * gamma * (out(r & ~bit, c & ~bit) + out(r | bit, c | bit));
        }
        next(r, c) = v;
      }
    }
    out = std::move(next);
  }
  return out;
}

DenseOperator noisy_evolve(const EvolutionPlan& plan, const NoiseModel& noise, const DenseOperator& rho) {
  check_density_limit(plan.n);
  if (rho.rows() != (Eigen::Index{1} << plan.n)) throw DimensionError("noisy_evolve: size mismatch");
  DenseOperator out = rho;
  for (const auto& uk : step_unitaries(plan)) out = depolarize(uk * out * uk.adjoint(), noise.gamma);
  return out;
}

DenseOperator noisy_heisenberg(const EvolutionPlan& plan, const NoiseModel& noise, const PauliTerm& o) {
  check_density_limit(plan.n);
  if (o.num_qubits() != plan.n) throw DimensionError("observable and plan differ in qubit count");
  const auto us = step_unitaries(plan);
  DenseOperator a = to_dense(o, kDensityLimit);
  for (int k = plan.num_steps() - 1; k >= 0; --k) {
    a = depolarize(a, noise.gamma);
    a = us[k].adjoint() * a * us[k];
  }
  return a;
}

Dataset sample_dataset(const EvolutionPlan& plan, std::uint64_t N, std::uint64_t seed,
                       const std::optional<NoiseModel>& noise, const SampleOptions& opts) {
  if (N == 0) throw ValueError("dataset size must be positive");
  const int n = plan.n;
  const bool noisy = noise.has_value() && noise->gamma > 0;
  if (noisy) {
    check_density_limit(n);
  } else {
    check_state_limit(n);
  }
  Dataset ds;
  ds.n = n;
  ds.K = plan.num_steps();
  ds.seed = seed;
  ds.gamma = noise ? noise->gamma : 0.0;
  ds.plan_digest = sha256(serialize_plan(plan));
  ds.resize(N);
  const auto us = step_unitaries(plan);
  DenseOperator u = DenseOperator::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& uk : us) u = uk * u;
  const std::size_t dim = std::size_t{1} << n;

  parallel_for(N, opts.threads, [&](std::size_t l) {
    CounterRng rng = substream(seed, StreamTag::Records, l);
    std::vector<StabilizerLabel> labels(n);
    for (int q = 0; q < n; ++q) {
      labels[q] = static_cast<StabilizerLabel>(rng.bounded(6));
      ds.labels[l * n + q] = static_cast<std::uint8_t>(labels[q]);
    }
    for (int q = 0; q < n; ++q) ds.bases[l * n + q] = static_cast<std::uint8_t>(rng.bounded(3));
    std::vector<double> probs(dim);
    const DenseVector psi = product_state(labels);
    if (noisy) {
      DenseOperator rho = psi * psi.adjoint();
      for (const auto& uk : us) rho = depolarize(uk * rho * uk.adjoint(), noise->gamma);
      for (int q = 0; q < n; ++q) conjugate_1q(rho, q, basis_rotation(static_cast<Basis>(ds.bases[l * n + q])));
      for (std::size_t c = 0; c < dim; ++c) probs[c] = std::max(0.0, rho(c, c).real());
    } else {
      DenseVector out = u * psi;
      for (int q = 0; q < n; ++q) apply_1q(out, q, basis_rotation(static_cast<Basis>(ds.bases[l * n + q])));
      for (std::size_t c = 0; c < dim; ++c) probs[c] = std::norm(out(c));
    }
    ds.outcomes[l] = collapse(probs, n, rng);
  });
  return ds;
}

}  // namespace hamlearn
