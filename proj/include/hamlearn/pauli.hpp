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

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hamlearn {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 64;
inline constexpr double kDefaultPrune = 1e-12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// The six single-qubit stabilizer states |0>,|1>,|+>,|->,|+i>,|-i>.
enum class StabilizerLabel : std::uint8_t { ZPlus = 0, ZMinus = 1, XPlus = 2, XMinus = 3, YPlus = 4, YMinus = 5 };

inline constexpr Pauli label_axis(StabilizerLabel s) {
  switch (s) {
    case StabilizerLabel::ZPlus:
    case StabilizerLabel::ZMinus:
      return Pauli::Z;
    case StabilizerLabel::XPlus:
    case StabilizerLabel::XMinus:
      return Pauli::X;
    default:
      return Pauli::Y;
  }
}
inline constexpr int label_sign(StabilizerLabel s) { return (static_cast<int>(s) & 1) ? -1 : 1; }
inline constexpr StabilizerLabel make_label(Pauli axis, int sign) {
  const int base = axis == Pauli::Z ? 0 : axis == Pauli::X ? 2 : 4;
  return static_cast<StabilizerLabel>(base + (sign < 0 ? 1 : 0));
}
std::string label_name(StabilizerLabel s);

/// Hermitian Pauli string in symplectic form; bit q of x/z is the X/Z part on qubit q.
struct PauliKey {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  auto operator<=>(const PauliKey&) const = default;
  std::uint64_t support() const { return x | z; }
  int weight() const;
  bool is_identity() const { return (x | z) == 0; }
  Pauli at(int q) const;
};

/// i^phase times a Hermitian Pauli string on n qubits.
class PauliTerm {
 public:
  PauliTerm() = default;
  PauliTerm(int n, std::uint64_t x_mask, std::uint64_t z_mask, int phase = 0);
  PauliTerm(int n, PauliKey key, int phase = 0) : PauliTerm(n, key.x, key.z, phase) {}

  static PauliTerm identity(int n) { return PauliTerm(n, 0, 0); }
  static PauliTerm single(int n, int qubit, Pauli p);
  /// Parses a dense word with qubit 0 first, e.g. "XIZ", optionally prefixed by +, -, +i or -i.
  static PauliTerm parse(std::string_view word);
  /// Places `word[k]` on `qubits[k]`.
  static PauliTerm on_qubits(int n, std::span<const int> qubits, std::string_view word);

  int num_qubits() const { return n_; }
  std::uint64_t x_mask() const { return key_.x; }
  std::uint64_t z_mask() const { return key_.z; }
  const PauliKey& key() const { return key_; }
  /// Exponent of i in {0,1,2,3}.
  int phase() const { return phase_; }
  Complex phase_value() const;
  std::uint64_t support_mask() const { return key_.support(); }
  std::vector<int> support() const;
  int weight() const { return key_.weight(); }
  bool is_identity() const { return key_.is_identity(); }
  Pauli at(int q) const { return key_.at(q); }
  bool commutes_with(const PauliTerm& other) const;
  std::string to_string() const;

  bool operator==(const PauliTerm&) const = default;

 private:
  int n_ = 0;
  PauliKey key_{};
  std::uint8_t phase_ = 0;
};

/// Single Pauli product with phase. Throws DimensionError on qubit-count mismatch.
PauliTerm mul(const PauliTerm& a, const PauliTerm& b);
inline PauliTerm operator*(const PauliTerm& a, const PauliTerm& b) { return mul(a, b); }

/// Exponent of i produced when multiplying the Hermitian strings a*b.
int product_phase(const PauliKey& a, const PauliKey& b);
bool anticommute(const PauliKey& a, const PauliKey& b);

/// Sparse complex combination of Hermitian Pauli strings. Coefficients with
/// magnitude below the prune threshold are never stored.
class PauliSum {
 public:
  using TermMap = std::map<PauliKey, Complex>;

  PauliSum() = default;
  explicit PauliSum(int n, double prune = kDefaultPrune);
  PauliSum(const PauliTerm& term, Complex coeff = 1.0);

  int num_qubits() const { return n_; }
  double prune_threshold() const { return prune_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Complex coefficient(const PauliKey& key) const;

  void add(const PauliKey& key, Complex coeff);
  void add(const PauliTerm& term, Complex coeff = 1.0);
  void add_scaled(const PauliSum& other, Complex scale);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Drops imaginary parts after checking they are within `tol`.
  PauliSum hermitian_part(double tol = 1e-9) const;
  std::uint64_t support_mask() const;
  double one_norm() const;
  /// Re-embeds onto `n_new >= n` qubits with qubit q mapped to q + offset.
  PauliSum embedded(int n_new, int offset = 0) const;

 private:
  int n_ = 0;
  double prune_ = kDefaultPrune;
  TermMap terms_;
};

/// product and commutator prune their result at the finer of the two operand thresholds.
PauliSum product(const PauliSum& a, const PauliSum& b);
PauliSum commutator(const PauliSum& a, const PauliSum& b);
/// [c_1, [c_2, ... [c_m, o] ...]] evaluated right to left.
PauliSum nested_commutator(std::span<const PauliSum> chain, const PauliSum& o);

/// <psi|P|psi> for a product of stabilizer states; each single-qubit factor is 0 or +-1.
double expect_product_state(const PauliSum& p, std::span<const StabilizerLabel> labels);
double expect_product_state(const PauliKey& key, std::span<const StabilizerLabel> labels);

}  // namespace hamlearn
