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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hamlearn/pauli.hpp"

namespace hamlearn {

enum class Basis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr Pauli basis_axis(Basis b) { return b == Basis::X ? Pauli::X : b == Basis::Y ? Pauli::Y : Pauli::Z; }

using Digest = std::array<std::uint8_t, 32>;

/// Randomized-measurement records stored column-flat: record l, qubit q at index l*n + q.
struct Dataset {
  int n = 0;
  int K = 0;
  std::uint64_t seed = 0;
  double gamma = 0;
  Digest plan_digest{};
  std::vector<std::uint8_t> labels;
  std::vector<std::uint8_t> bases;
  /// Bit q set means outcome -1 on qubit q.
  std::vector<std::uint64_t> outcomes;

  std::uint64_t size() const { return outcomes.size(); }
  StabilizerLabel label(std::uint64_t l, int q) const { return static_cast<StabilizerLabel>(labels[l * n + q]); }
  Basis basis(std::uint64_t l, int q) const { return static_cast<Basis>(bases[l * n + q]); }
  int outcome_sign(std::uint64_t l, int q) const { return ((outcomes[l] >> q) & 1) ? -1 : 1; }
  void resize(std::uint64_t N);
};

inline constexpr char kDatasetMagic[8] = {'H', 'L', 'D', 'S', 'E', 'T', '0', '1'};

/// Little-endian header followed by ceil(6n/8)-byte records. Within a record, bits
/// [3q, 3q+3) hold the input label, [3n+2q, 3n+2q+2) the basis and bit 5n+q the outcome.
std::vector<std::uint8_t> encode_dataset(const Dataset& ds);
Dataset decode_dataset(const std::vector<std::uint8_t>& bytes, const std::string& source = "");
void write_dataset(const std::string& path, const Dataset& ds);
Dataset read_dataset(const std::string& path);

}  // namespace hamlearn
