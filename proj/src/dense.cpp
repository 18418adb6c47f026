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

#include "hamlearn/dense.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <numbers>

#include "hamlearn/errors.hpp"

namespace hamlearn {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Complex y_phase(const PauliKey& k) { return kPhases[std::popcount(k.x & k.z) & 3]; }

double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

}  // namespace

int qubits_of_dim(Eigen::Index dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0) throw DimensionError("operator dimension is not a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

DenseOperator to_dense(const PauliSum& p, int limit) {
  const int n = p.num_qubits();
  if (n > limit) throw CapacityError("dense operator on " + std::to_string(n) + " qubits exceeds limit " + std::to_string(limit));
  const std::uint64_t dim = std::uint64_t{1} << n;
  DenseOperator out = DenseOperator::Zero(dim, dim);
  for (const auto& [key, c] : p.terms()) {
    const Complex base = c * y_phase(key);
    for (std::uint64_t col = 0; col < dim; ++col) out(col ^ key.x, col) += base * parity_sign(col & key.z);
  }
  return out;
}

DenseOperator to_dense(const PauliTerm& p, int limit) { return to_dense(PauliSum(p), limit); }

PauliSum from_dense(const DenseOperator& a, int n, double prune) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (static_cast<std::uint64_t>(a.rows()) != dim || a.cols() != a.rows()) throw DimensionError("from_dense: shape mismatch");
  PauliSum out(n, prune);
  std::vector<Complex> f(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    // Tr(P A) = i^{|x&z|} sum_r (-1)^{r.z} A[r][r^x]; the sum over r is a Walsh-Hadamard transform in z.
    for (std::uint64_t r = 0; r < dim; ++r) f[r] = a(r, r ^ x);
    for (std::uint64_t h = 1; h < dim; h <<= 1) {
      for (std::uint64_t i = 0; i < dim; i += h << 1) {
        for (std::uint64_t j = i; j < i + h; ++j) {
          const Complex u = f[j], v = f[j + h];
          f[j] = u + v;
          f[j + h] = u - v;
        }
      }
    }
    for (std::uint64_t z = 0; z < dim; ++z) {
      const PauliKey key{x, z};
      out.add(key, f[z] * y_phase(key) / static_cast<double>(dim));
    }
  }
  return out;
}

DenseVector apply_pauli(const PauliTerm& p, const DenseVector& psi) {
  const std::uint64_t dim = std::uint64_t{1} << p.num_qubits();
  if (static_cast<std::uint64_t>(psi.size()) != dim) throw DimensionError("apply_pauli: state size mismatch");
  DenseVector out(dim);
  const Complex base = p.phase_value() * y_phase(p.key());
  for (std::uint64_t c = 0; c < dim; ++c) out(c ^ p.x_mask()) = base * parity_sign(c & p.z_mask()) * psi(c);
  return out;
}

bool is_unitary(const DenseOperator& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - DenseOperator::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const DenseOperator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double spectral_norm(const DenseOperator& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_distance(const DenseOperator& rho, const DenseOperator& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) throw DimensionError("trace_distance: shape mismatch");
  const DenseOperator d = rho - sigma;
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DenseOperator hermitian_function(const DenseOperator& a, const std::function<Complex(double)>& f) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (a + a.adjoint()));
  if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
  const auto& vals = es.eigenvalues();
  Eigen::VectorXcd fv(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) fv(k) = f(vals(k));
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

DenseOperator expm_hermitian(const DenseOperator& h, double t) {
  return hermitian_function(h, [t](double lam) { return std::exp(Complex(0, -lam * t)); });
}

double phase_min_distance(const DenseOperator& u, const DenseOperator& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw DimensionError("phase_min_distance: shape mismatch");
  auto f = [&](double phi) { return spectral_norm(std::exp(Complex(0, phi)) * u - v); };
  constexpr int kGrid = 64;
  const double step = 2 * std::numbers::pi / kGrid;
  double best_phi = 0, best = f(0);
  for (int k = 1; k < kGrid; ++k) {
    const double val = f(k * step);
    if (val < best) {
      best = val;
      best_phi = k * step;
    }
  }
  // The overlap phase is the exact minimizer whenever v is a phase times u.
  const Complex overlap = (u.adjoint() * v).trace();
  if (std::abs(overlap) > 0) {
    const double phi = std::arg(overlap);
    const double val = f(phi);
    if (val < best) {
      best = val;
      best_phi = phi;
    }
  }
  const double g = (std::sqrt(5.0) - 1) / 2;
  double a = best_phi - step, b = best_phi + step;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min({best, fc, fd});
}

DenseOperator embed_operator(const DenseOperator& local, std::span<const int> qubits, int n) {
  const int m = static_cast<int>(qubits.size());
  if (local.rows() != (Eigen::Index{1} << m) || local.cols() != local.rows()) throw DimensionError("embed_operator: local shape mismatch");
  if (n > kSewedDenseLimit) throw CapacityError("embed_operator: too many qubits");
  std::uint64_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n) throw DimensionError("embed_operator: qubit out of range");
    mask |= std::uint64_t{1} << q;
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t ldim = std::uint64_t{1} << m;
  std::vector<std::uint64_t> spread(ldim, 0);
  for (std::uint64_t l = 0; l < ldim; ++l) {
    for (int k = 0; k < m; ++k) {
      if ((l >> k) & 1) spread[l] |= std::uint64_t{1} << qubits[k];
    }
  }
  DenseOperator out = DenseOperator::Zero(dim, dim);
  for (std::uint64_t rest = 0; rest < dim; ++rest) {
    if (rest & mask) continue;
    for (std::uint64_t c = 0; c < ldim; ++c) {
      for (std::uint64_t r = 0; r < ldim; ++r) {
        const Complex v = local(r, c);
        if (v != Complex{}) out(rest | spread[r], rest | spread[c]) = v;
      }
    }
  }
  return out;
}

PauliSum compress_support(const PauliSum& p, std::vector<int>& qubits) {
  qubits.clear();
  const std::uint64_t mask = p.support_mask();
  for (std::uint64_t m = mask; m; m &= m - 1) qubits.push_back(std::countr_zero(m));
  auto squeeze = [&](std::uint64_t v) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      if ((v >> qubits[k]) & 1) out |= std::uint64_t{1} << k;
    }
    return out;
  };
  PauliSum out(static_cast<int>(qubits.size()), p.prune_threshold());
  for (const auto& [key, c] : p.terms()) out.add(PauliKey{squeeze(key.x), squeeze(key.z)}, c);
  return out;
}

DenseOperator swap_blocks(int n) {
  if (2 * n > kSewedDenseLimit) throw CapacityError("swap_blocks: too many qubits");
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  const std::uint64_t low = (std::uint64_t{1} << n) - 1;
  DenseOperator s = DenseOperator::Zero(dim, dim);
  for (std::uint64_t c = 0; c < dim; ++c) s(((c & low) << n) | (c >> n), c) = 1.0;
  return s;
}

DenseOperator trace_out_high(const DenseOperator& m, int keep, int total) {
  const std::uint64_t dk = std::uint64_t{1} << keep;
  const std::uint64_t dh = std::uint64_t{1} << (total - keep);
  if (static_cast<std::uint64_t>(m.rows()) != dk * dh) throw DimensionError("trace_out_high: shape mismatch");
  DenseOperator out = DenseOperator::Zero(dk, dk);
  for (std::uint64_t h = 0; h < dh; ++h) out += m.block(h * dk, h * dk, dk, dk);
  return out;
}

}  // namespace hamlearn
