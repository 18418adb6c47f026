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

#include <optional>
#include <string>
#include <vector>

#include "hamlearn/pauli.hpp"

namespace hamlearn {

struct HamiltonianTerm {
  std::vector<int> qubits;
  double coeff = 0;
  /// Pauli letters aligned with `qubits`.
  std::string word;
  /// Unit-norm body on the term's support.
  PauliSum body;
  std::uint64_t support = 0;
};

struct HamiltonianSpec {
  int n = 0;
  int dimension = 1;
  std::vector<HamiltonianTerm> terms;

  /// sum_X coeff_X h_X
  PauliSum as_sum() const;
  int locality() const;
};

struct EvolutionPlan {
  int n = 0;
  int dimension = 1;
  std::optional<std::vector<std::vector<int>>> coords;
  std::vector<HamiltonianSpec> hams;
  std::vector<double> times;

  int num_steps() const { return static_cast<int>(hams.size()); }
  double max_time() const;
  int locality() const;
};

struct InteractionGraph {
  struct Vertex {
    int step = 0;
    int term = 0;
    std::uint64_t support = 0;
  };
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> adjacency;
  std::size_t num_edges = 0;
  int max_degree = 0;
  int num_steps = 0;
  int n = 0;
};

struct ParseOptions {
  double max_abs_time = 10.0;
};

HamiltonianTerm make_term(int n, std::vector<int> qubits, double coeff, const std::string& word);

/// Parses and validates a JSON plan document. `source` prefixes error locations.
EvolutionPlan parse_spec(const std::string& text, const std::string& source = "", const ParseOptions& opts = {});
EvolutionPlan load_plan(const std::string& path, const ParseOptions& opts = {});
/// Canonical JSON; parse_spec(serialize_plan(p)) reproduces p exactly.
std::string serialize_plan(const EvolutionPlan& plan);
void validate_plan(const EvolutionPlan& plan, const ParseOptions& opts = {});

/// Super-interaction graph over the terms of every step.
InteractionGraph interaction_graph(const EvolutionPlan& plan);

/// 1/(2 e K d); infinite when d = 0.
double critical_time(int num_steps, int degree);
bool is_short_time(const EvolutionPlan& plan, const InteractionGraph& graph);

/// Open-chain transverse-field Ising model: sum Z_i Z_{i+1} + h sum X_i, one step.
EvolutionPlan tfim_chain(int n, double time, double zz = 1.0, double field = 1.0);
/// Same model on a rows x cols grid, with coordinates.
EvolutionPlan tfim_grid(int rows, int cols, double time, double zz = 1.0, double field = 1.0);

}  // namespace hamlearn
