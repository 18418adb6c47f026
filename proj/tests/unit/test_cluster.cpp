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
#include <queue>
#include <set>

#include "hamlearn/cluster.hpp"
#include "hamlearn/dense.hpp"
#include "hamlearn/errors.hpp"
#include "hamlearn/hamiltonian.hpp"
#include "hamlearn/simulator.hpp"
#include "support/random_plans.hpp"

namespace hamlearn {
namespace {

constexpr const char* kPlan = R"({
  "n": 2,
  "steps": [{"time": 0.1, "terms": [{"qubits": [0, 1], "coeff": 0.5, "pauli": "ZZ"},
                                     {"qubits": [1], "coeff": -0.25, "pauli": "X"}]}]
})";

TEST(Plan, ParsesAndRoundTrips) {
  const EvolutionPlan p = parse_spec(kPlan);
  EXPECT_EQ(p.n, 2);
  EXPECT_EQ(p.num_steps(), 1);
  EXPECT_EQ(p.locality(), 2);
  const EvolutionPlan q = parse_spec(serialize_plan(p));
  EXPECT_EQ(serialize_plan(q), serialize_plan(p));
}

std::string location_of(const std::string& text) {
  try {
    parse_spec(text, "plan.json");
  } catch (const ParseError& e) {
    return e.location();
  }
  return "";
}

TEST(Plan, ErrorsCarryLocations) {
  EXPECT_NE(location_of(R"({"n": 2, "steps": [{"time": 0.1, "terms": [{"qubits": [0], "coeff": 2.0, "pauli": "Z"}]}]})").find("steps[0].terms[0].coeff"),
            std::string::npos);
  EXPECT_NE(location_of(R"({"n": 2, "steps": [{"time": 0.1, "terms": [{"qubits": [5], "coeff": 0.5, "pauli": "Z"}]}]})").find("steps[0].terms[0]"),
            std::string::npos);
  EXPECT_NE(location_of(R"({"n": 2})").find("plan.json"), std::string::npos);
  EXPECT_NE(location_of("{not json").find("plan.json"), std::string::npos);
  EXPECT_THROW(parse_spec(R"({"n": 1, "steps": [{"time": 50, "terms": [{"qubits": [0], "coeff": 0.5, "pauli": "Z"}]}]})"), ParseError);
}

TEST(Plan, RejectsIdentityLetters) { EXPECT_THROW(make_term(2, {0, 1}, 0.5, "IZ"), Error); }

TEST(Graph, ChainDegree) {
  const InteractionGraph g = interaction_graph(tfim_chain(3, 0.05));
  EXPECT_EQ(g.vertices.size(), 5u);
  EXPECT_EQ(g.num_edges, 5u);
  EXPECT_EQ(g.max_degree, 3);
  EXPECT_NEAR(critical_time(1, 3), 1 / (6 * std::numbers::e), 1e-15);
}

TEST(Truncation, ClampsOrder) {
  const EvolutionPlan tiny = tfim_chain(3, 1e-6);
  EXPECT_EQ(truncation_order(tiny, 1e-3).M, 1);
  const EvolutionPlan near = tfim_chain(3, 0.06);
  const TruncationPlan tp = truncation_order(near, 1e-3);
  EXPECT_EQ(tp.M, 8);
  EXPECT_GT(tp.M_formula, 8);
  EXPECT_EQ(tp.regime, Regime::ShortTime);
  EXPECT_EQ(truncation_order(tfim_chain(3, 0.5), 1e-3).regime, Regime::ConstantTime);
  EXPECT_EQ(truncation_order(tfim_chain(3, 0.0), 1e-3).M, 1);
}

TEST(Truncation, TermCountBound) {
  TruncationPlan tp;
  tp.M = 1;
  EXPECT_EQ(term_count_bound(tp, 1, 2, 1), 44u);
  tp.M = 2;
  EXPECT_EQ(term_count_bound(tp, 1, 2, 0), 256u);
  std::uint64_t prev = 0;
  for (int d = 0; d < 5; ++d) {
    const std::uint64_t b = term_count_bound(tp, 1, 2, d);
    EXPECT_GE(b, prev);
    prev = b;
  }
  tp.M = 50;
  EXPECT_EQ(term_count_bound(tp, 3, 4, 10), UINT64_MAX);
}

TEST(Heisenberg, FirstOrderExample) {
  // H = Z, O = X: U^dagger X U = cos(2t) X - sin(2t) Y; first order gives X - 2t Y.
  EvolutionPlan p;
  p.n = 1;
  HamiltonianSpec h;
  h.n = 1;
  h.terms.push_back(make_term(1, {0}, 1.0, "Z"));
  p.hams.push_back(h);
  p.times.push_back(0.1);
  TruncationOptions opts;
  opts.M_override = 1;
  const PauliSum v = truncated_heisenberg(p, PauliTerm::parse("X"), truncation_order(p, 1e-3, opts));
  EXPECT_NEAR(v.coefficient(PauliTerm::parse("X").key()).real(), 1.0, 1e-14);
  EXPECT_NEAR(v.coefficient(PauliTerm::parse("Y").key()).real(), -0.2, 1e-14);
  opts.M_override = 30;
  const PauliSum w = truncated_heisenberg(p, PauliTerm::parse("X"), truncation_order(p, 1e-3, opts));
  EXPECT_NEAR(w.coefficient(PauliTerm::parse("X").key()).real(), std::cos(0.2), 1e-12);
  EXPECT_NEAR(w.coefficient(PauliTerm::parse("Y").key()).real(), -std::sin(0.2), 1e-12);
}

TEST(Heisenberg, ConvergesToDenseOracle) {
  for (int trial = 0; trial < 10; ++trial) {
    CounterRng rng(31, trial);
    const EvolutionPlan plan = testing::random_plan(3, 1 + trial % 2, 0.1, rng);
    const DenseOperator u = evolution_unitary(plan);
    TruncationOptions opts;
    opts.M_override = 14;
    const TruncationPlan tp = truncation_order(plan, 1e-3, opts);
    for (int q = 0; q < 3; ++q) {
      const PauliTerm o = PauliTerm::single(3, q, Pauli::Z);
      EXPECT_LT(spectral_norm(to_dense(truncated_heisenberg(plan, o, tp)) - exact_heisenberg(u, o)), 1e-9);
    }
  }
}

TEST(Heisenberg, PruneOptionReachesIntermediateSums) {
  // At tiny t the order-5 commutator is ~1e-14; default pruning drops it, prune = 0 keeps it.
  const EvolutionPlan plan = tfim_chain(2, 1e-3);
  TruncationOptions opts;
  opts.M_override = 6;
  const TruncationPlan tp = truncation_order(plan, 1e-3, opts);
  const PauliTerm o = PauliTerm::single(2, 0, Pauli::X);
  const DenseOperator exact = exact_heisenberg(plan, o);
  HeisenbergOptions none;
  none.prune = 0;
  EXPECT_LT(spectral_norm(to_dense(truncated_heisenberg(plan, o, tp, none)) - exact), 1e-14);
  EXPECT_LE(spectral_norm(to_dense(truncated_heisenberg(plan, o, tp)) - exact), 1e-11);
}

TEST(Heisenberg, IdentityPassesThrough) {
  const EvolutionPlan plan = tfim_chain(2, 0.05);
  const PauliSum v = truncated_heisenberg(plan, PauliTerm::identity(2), truncation_order(plan, 1e-3));
  EXPECT_EQ(v.size(), 1u);
  EXPECT_EQ(v.coefficient(PauliKey{}), Complex(1.0));
}

// BFS over the cluster's distinct vertices using only term supports, independent of the adjacency lists.
bool connected_to(const InteractionGraph& g, const Cluster& c, std::uint64_t o_support) {
  std::vector<int> vs;
  for (const auto& [v, m] : c.items) vs.push_back(v);
  std::set<int> seen;
  std::queue<int> frontier;
  for (int v : vs) {
    if (g.vertices[v].support & o_support) {
      seen.insert(v);
      frontier.push(v);
    }
  }
  while (!frontier.empty()) {
    const int a = frontier.front();
    frontier.pop();
    for (int b : vs) {
      if (!seen.count(b) && (g.vertices[a].support & g.vertices[b].support)) {
        seen.insert(b);
        frontier.push(b);
      }
    }
  }
  return seen.size() == vs.size();
}

TEST(Clusters, ConnectedSortedAndCounted) {
  const InteractionGraph g = interaction_graph(tfim_chain(4, 0.05));
  for (int M = 1; M <= 4; ++M) {
    const auto cs = enumerate_clusters(g, 1ULL << 1, M);
    ASSERT_FALSE(cs.empty());
    std::vector<int> per_size(M + 1, 0);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      EXPECT_TRUE(connected_to(g, cs[k], 1ULL << 1));
      EXPECT_LE(cs[k].size(), M);
      ++per_size[cs[k].size()];
      if (k) {
        EXPECT_TRUE(cs[k - 1].size() < cs[k].size() || (cs[k - 1].size() == cs[k].size() && cs[k - 1].sequence() < cs[k].sequence()));
      }
    }
    for (int m = 1; m <= M; ++m) EXPECT_LE(per_size[m], std::pow(std::numbers::e * g.max_degree, m));
  }
}

TEST(Clusters, SingleVertexSetsTouchObservable) {
  const InteractionGraph g = interaction_graph(tfim_chain(3, 0.05));
  const auto sets = connected_vertex_sets(g, 1ULL << 0, 1);
  // ZZ on (0,1) and X on 0.
  EXPECT_EQ(sets.size(), 2u);
}

}  // namespace
}  // namespace hamlearn
