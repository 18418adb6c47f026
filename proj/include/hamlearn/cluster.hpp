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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hamlearn/hamiltonian.hpp"
#include "hamlearn/pauli.hpp"

namespace hamlearn {

enum class Regime { ShortTime, ConstantTime };
const char* regime_name(Regime r);

struct TruncationPlan {
  double epsilon_prime = 1e-3;
  /// Order actually used, clamped to [1, cap].
  int M = 1;
  /// Unclamped formula value (may be < 1 or huge).
  double M_formula = 1;
  Regime regime = Regime::ShortTime;
  double kappa = 0.5;
  double t_star = 0;
  double t = 0;
  int num_steps = 1;
  int degree = 0;
};

struct TruncationOptions {
  double kappa = 0.5;
  int cap = 8;
  std::optional<int> M_override;
};

TruncationPlan truncation_order(const EvolutionPlan& plan, const InteractionGraph& graph, double eps_prime,
                                const TruncationOptions& opts = {});
TruncationPlan truncation_order(const EvolutionPlan& plan, double eps_prime, const TruncationOptions& opts = {});

/// Residual bound of the truncated expansion at order `M`: (2teKd)^{K(M+1)}/(1-2teKd)^K
/// in the short-time regime and (1-e^{-y})^M (e^y-1)/(1-kappa)^K with y = pi t e K d/kappa otherwise.
double truncation_bound(const TruncationPlan& trunc, int M);
inline double truncation_bound(const TruncationPlan& trunc) { return truncation_bound(trunc, trunc.M); }

/// A multiset of super-interaction-graph vertices: (vertex, multiplicity) sorted by vertex.
struct Cluster {
  std::vector<std::pair<int, int>> items;
  int size() const;
  /// Sequence of vertices with repetition, nondecreasing.
  std::vector<int> sequence() const;
  bool operator==(const Cluster&) const = default;
};

/// Connected clusters touching `o_support` whose per-step size is at most M (for one step
/// this is total size <= M). Ordered by total size, then the sorted vertex sequence.
std::vector<Cluster> enumerate_clusters(const InteractionGraph& graph, std::uint64_t o_support, int M);

/// Distinct vertex sets underlying the clusters above, as sorted index lists.
std::vector<std::vector<int>> connected_vertex_sets(const InteractionGraph& graph, std::uint64_t o_support, int M);

struct HeisenbergOptions {
  std::size_t max_terms = std::size_t{1} << 20;
  double prune = kDefaultPrune;
};

/// Truncated expansion of U^dagger o U with per-step order trunc.M.
PauliSum truncated_heisenberg(const EvolutionPlan& plan, const PauliTerm& o, const TruncationPlan& trunc,
                              const HeisenbergOptions& opts = {});

/// ceil(4^{K Lambda M} max(1, e d)^M), saturating at UINT64_MAX.
std::uint64_t term_count_bound(const TruncationPlan& trunc, int K, int locality, int degree);

}  // namespace hamlearn
