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

#include "hamlearn/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "hamlearn/errors.hpp"

namespace hamlearn {

namespace {

std::uint64_t qubit_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

void check_qubits(int n) {
  if (n < 0 || n > kMaxQubits) throw DimensionError("qubit count " + std::to_string(n) + " outside [0, 64]");
}

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I':
    case '_':
      return Pauli::I;
    case 'X':
      return Pauli::X;
    case 'Y':
      return Pauli::Y;
    case 'Z':
      return Pauli::Z;
    default:
      throw ValueError(std::string("not a Pauli letter: '") + c + "'");
  }
}

std::string label_name(StabilizerLabel s) {
  static const char* names[] = {"Z+", "Z-", "X+", "X-", "Y+", "Y-"};
  return names[static_cast<int>(s)];
}

int PauliKey::weight() const { return std::popcount(x | z); }

Pauli PauliKey::at(int q) const {
  const bool xb = (x >> q) & 1;
  const bool zb = (z >> q) & 1;
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return Pauli::I;
}

int product_phase(const PauliKey& a, const PauliKey& b) {
  const std::uint64_t ax = a.x & ~a.z, ay = a.x & a.z, az = ~a.x & a.z;
  const std::uint64_t bx = b.x & ~b.z, by = b.x & b.z, bz = ~b.x & b.z;
  // XY = iZ, YZ = iX, ZX = iY and the reversed orders carry -i.
  const int plus = std::popcount((ax & by) | (ay & bz) | (az & bx));
  const int minus = std::popcount((ay & bx) | (az & by) | (ax & bz));
  return ((plus - minus) % 4 + 4) % 4;
}

bool anticommute(const PauliKey& a, const PauliKey& b) {
  return std::popcount((a.x & b.z) ^ (a.z & b.x)) & 1;
}

PauliTerm::PauliTerm(int n, std::uint64_t x_mask, std::uint64_t z_mask, int phase)
    : n_(n), key_{x_mask, z_mask}, phase_(static_cast<std::uint8_t>(((phase % 4) + 4) % 4)) {
  check_qubits(n);
  if (((x_mask | z_mask) & ~qubit_mask(n)) != 0) throw DimensionError("Pauli mask addresses qubits beyond n");
}

PauliTerm PauliTerm::single(int n, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n) throw DimensionError("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const bool xb = p == Pauli::X || p == Pauli::Y;
  const bool zb = p == Pauli::Z || p == Pauli::Y;
  return PauliTerm(n, xb ? bit : 0, zb ? bit : 0);
}

PauliTerm PauliTerm::parse(std::string_view word) {
  int phase = 0;
  if (word.starts_with("+i")) {
    phase = 1;
    word.remove_prefix(2);
  } else if (word.starts_with("-i")) {
    phase = 3;
    word.remove_prefix(2);
  } else if (word.starts_with('-')) {
    phase = 2;
    word.remove_prefix(1);
  } else if (word.starts_with('+')) {
    word.remove_prefix(1);
  }
  const int n = static_cast<int>(word.size());
  check_qubits(n);
  std::uint64_t x = 0, z = 0;
  for (int q = 0; q < n; ++q) {
    const Pauli p = pauli_from_char(word[q]);
    if (p == Pauli::X || p == Pauli::Y) x |= std::uint64_t{1} << q;
    if (p == Pauli::Z || p == Pauli::Y) z |= std::uint64_t{1} << q;
  }
  return PauliTerm(n, x, z, phase);
}

PauliTerm PauliTerm::on_qubits(int n, std::span<const int> qubits, std::string_view word) {
  if (qubits.size() != word.size()) throw DimensionError("Pauli word length does not match qubit list");
  std::uint64_t x = 0, z = 0;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const int q = qubits[k];
    if (q < 0 || q >= n) throw DimensionError("qubit index out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if ((x | z) & bit) throw ValueError("repeated qubit in Pauli word");
    const Pauli p = pauli_from_char(word[k]);
    if (p == Pauli::X || p == Pauli::Y) x |= bit;
    if (p == Pauli::Z || p == Pauli::Y) z |= bit;
  }
  return PauliTerm(n, x, z);
}

Complex PauliTerm::phase_value() const { return kPhases[phase_]; }

std::vector<int> PauliTerm::support() const {
  std::vector<int> out;
  for (std::uint64_t m = support_mask(); m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

bool PauliTerm::commutes_with(const PauliTerm& other) const { return !anticommute(key_, other.key_); }

std::string PauliTerm::to_string() const {
  static const char* prefixes[] = {"+", "+i", "-", "-i"};
  std::string s = prefixes[phase_];
  for (int q = 0; q < n_; ++q) s += pauli_char(at(q));
  return s;
}

PauliTerm mul(const PauliTerm& a, const PauliTerm& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("Pauli product of terms on different qubit counts");
  const int phase = a.phase() + b.phase() + product_phase(a.key(), b.key());
  return PauliTerm(a.num_qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask(), phase);
}

PauliSum::PauliSum(int n, double prune) : n_(n), prune_(prune) { check_qubits(n); }

PauliSum::PauliSum(const PauliTerm& term, Complex coeff) : PauliSum(term.num_qubits()) { add(term, coeff); }

Complex PauliSum::coefficient(const PauliKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add(const PauliKey& key, Complex coeff) {
  if (((key.x | key.z) & ~qubit_mask(n_)) != 0) throw DimensionError("Pauli key addresses qubits beyond n");
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < prune_) terms_.erase(it);
}

void PauliSum::add(const PauliTerm& term, Complex coeff) {
  if (term.num_qubits() != n_) throw DimensionError("adding a term with a different qubit count");
  add(term.key(), coeff * term.phase_value());
}

void PauliSum::add_scaled(const PauliSum& other, Complex scale) {
  if (other.n_ != n_) throw DimensionError("adding sums with different qubit counts");
  for (const auto& [key, c] : other.terms_) add(key, c * scale);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  add_scaled(other, 1.0);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  add_scaled(other, -1.0);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) < prune_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_, prune_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, std::conj(c));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& [key, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

PauliSum PauliSum::hermitian_part(double tol) const {
  PauliSum out(n_, prune_);
  for (const auto& [key, c] : terms_) {
    if (std::abs(c.imag()) > tol) throw ValueError("operator is not Hermitian within tolerance");
    out.add(key, c.real());
  }
  return out;
}

std::uint64_t PauliSum::support_mask() const {
  std::uint64_t m = 0;
  for (const auto& [key, c] : terms_) m |= key.support();
  return m;
}

double PauliSum::one_norm() const {
  double s = 0;
  for (const auto& [key, c] : terms_) s += std::abs(c);
  return s;
}

PauliSum PauliSum::embedded(int n_new, int offset) const {
  if (offset < 0 || n_ + offset > n_new) throw DimensionError("embedding does not fit");
  PauliSum out(n_new, prune_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(PauliKey{key.x << offset, key.z << offset}, c);
  return out;
}

PauliSum product(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("product of sums on different qubit counts");
  PauliSum out(a.num_qubits(), std::min(a.prune_threshold(), b.prune_threshold()));
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      out.add(PauliKey{ka.x ^ kb.x, ka.z ^ kb.z}, ca * cb * kPhases[product_phase(ka, kb)]);
    }
  }
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits() != b.num_qubits()) throw DimensionError("commutator of sums on different qubit counts");
  PauliSum out(a.num_qubits(), std::min(a.prune_threshold(), b.prune_threshold()));
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (!anticommute(ka, kb)) continue;
      out.add(PauliKey{ka.x ^ kb.x, ka.z ^ kb.z}, 2.0 * ca * cb * kPhases[product_phase(ka, kb)]);
    }
  }
  return out;
}

PauliSum nested_commutator(std::span<const PauliSum> chain, const PauliSum& o) {
  PauliSum acc = o;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (it->num_qubits() != o.num_qubits()) throw DimensionError("nested commutator operands differ in qubit count");
    acc = commutator(*it, acc);
    if (acc.empty()) break;
  }
  return acc;
}

double expect_product_state(const PauliKey& key, std::span<const StabilizerLabel> labels) {
  int sign = 1;
  for (std::uint64_t m = key.support(); m; m &= m - 1) {
    const int q = std::countr_zero(m);
    if (q >= static_cast<int>(labels.size())) throw DimensionError("label list shorter than Pauli support");
    if (label_axis(labels[q]) != key.at(q)) return 0.0;
    sign *= label_sign(labels[q]);
  }
  return sign;
}

double expect_product_state(const PauliSum& p, std::span<const StabilizerLabel> labels) {
  if (static_cast<int>(labels.size()) != p.num_qubits()) throw DimensionError("label count differs from qubit count");
  Complex acc = 0;
  for (const auto& [key, c] : p.terms()) acc += c * expect_product_state(key, labels);
  return acc.real();
}

}  // namespace hamlearn
