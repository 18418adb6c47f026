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

#include "hamlearn/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "hamlearn/errors.hpp"

namespace hamlearn {

const char* regime_name(Regime r) { return r == Regime::ShortTime ? "short_time" : "constant_time"; }

TruncationPlan truncation_order(const EvolutionPlan& plan, const InteractionGraph& graph, double eps_prime,
                                const TruncationOptions& opts) {
  if (!(eps_prime > 0 && eps_prime < 1)) throw ValueError("eps_prime must lie in (0, 1)");
  if (!(opts.kappa > 0 && opts.kappa < 1)) throw ValueError("kappa must lie in (0, 1)");
  if (opts.cap < 1) throw ValueError("truncation cap must be positive");
  TruncationPlan tp;
  tp.epsilon_prime = eps_prime;
  tp.kappa = opts.kappa;
  tp.num_steps = plan.num_steps();
  tp.degree = graph.max_degree;
  tp.t = plan.max_time();
  tp.t_star = critical_time(tp.num_steps, tp.degree);
  tp.regime = tp.t < tp.t_star ? Regime::ShortTime : Regime::ConstantTime;
  const double K = tp.num_steps;
  const double e = std::numbers::e;
  if (tp.degree == 0 || tp.t == 0) {
    tp.M_formula = 1;
  } else if (tp.regime == Regime::ShortTime) {
    const double x = 2 * tp.t * e * K * tp.degree;
    tp.M_formula = (std::log(1 / eps_prime) - K * std::log(1 - x)) / (K * std::log(1 / x));
  } else {
    const double ey = std::exp(std::numbers::pi * tp.t * e * K * tp.degree / tp.kappa);
    tp.M_formula = ey * std::log((ey - 1) / (std::pow(1 - tp.kappa, K) * eps_prime));
  }
  if (opts.M_override) {
    if (*opts.M_override < 1) throw ValueError("truncation order override must be positive");
    tp.M = *opts.M_override;
  } else {
    const double m = std::ceil(tp.M_formula);
    tp.M = m < 1 ? 1 : m > opts.cap ? opts.cap : static_cast<int>(m);
  }
  return tp;
}

TruncationPlan truncation_order(const EvolutionPlan& plan, double eps_prime, const TruncationOptions& opts) {
  return truncation_order(plan, interaction_graph(plan), eps_prime, opts);
}

double truncation_bound(const TruncationPlan& trunc, int M) {
  if (trunc.degree == 0 || trunc.t == 0) return 0.0;
  const double K = trunc.num_steps;
  const double e = std::numbers::e;
  if (trunc.regime == Regime::ShortTime) {
    const double x = 2 * trunc.t * e * K * trunc.degree;
    return std::pow(x, K * (M + 1)) / std::pow(1 - x, K);
  }
  const double y = std::numbers::pi * trunc.t * e * K * trunc.degree / trunc.kappa;
  return std::pow(1 - std::exp(-y), M) * std::expm1(y) / std::pow(1 - trunc.kappa, K);
}

int Cluster::size() const {
  int m = 0;
  for (const auto& [v, mult] : items) m += mult;
  return m;
}

std::vector<int> Cluster::sequence() const {
  std::vector<int> seq;
  for (const auto& [v, mult] : items) seq.insert(seq.end(), mult, v);
  return seq;
}

namespace {

constexpr std::size_t kMaxVertexSets = std::size_t{1} << 20;

bool touches(const InteractionGraph& g, int v, std::uint64_t o_support) { return (g.vertices[v].support & o_support) != 0; }

}  // namespace

std::vector<std::vector<int>> connected_vertex_sets(const InteractionGraph& graph, std::uint64_t o_support, int M) {
  if (M < 1) throw ValueError("cluster order must be positive");
  const int nv = static_cast<int>(graph.vertices.size());
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> level;
  for (int v = 0; v < nv; ++v) {
    if (touches(graph, v, o_support)) level.push_back({v});
  }
  seen.insert(level.begin(), level.end());
  while (!level.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& s : level) {
      std::vector<int> per_step(graph.num_steps, 0);
      for (int v : s) ++per_step[graph.vertices[v].step];
      std::vector<char> in(nv, 0);
      for (int v : s) in[v] = 1;
      std::vector<char> frontier(nv, 0);
      for (int v = 0; v < nv; ++v) {
        if (!in[v] && touches(graph, v, o_support)) frontier[v] = 1;
      }
      for (int u : s) {
        for (int v : graph.adjacency[u]) {
          if (!in[v]) frontier[v] = 1;
        }
      }
      for (int v = 0; v < nv; ++v) {
        if (!frontier[v] || per_step[graph.vertices[v].step] >= M) continue;
        std::vector<int> grown = s;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), v), v);
        if (!seen.contains(grown)) next.insert(std::move(grown));
      }
    }
    seen.insert(next.begin(), next.end());
    if (seen.size() > kMaxVertexSets) throw CapacityError("too many connected vertex sets");
    level.assign(next.begin(), next.end());
  }
  return {seen.begin(), seen.end()};
}

std::vector<Cluster> enumerate_clusters(const InteractionGraph& graph, std::uint64_t o_support, int M) {
  std::vector<Cluster> out;
  for (const auto& s : connected_vertex_sets(graph, o_support, M)) {
    std::vector<int> per_step(graph.num_steps, 0);
    for (int v : s) ++per_step[graph.vertices[v].step];
    // Multiplicities: odometer over each vertex, pruned by the per-step budget.
    std::vector<int> mult(s.size(), 1);
    auto emit = [&] {
      Cluster c;
      for (std::size_t k = 0; k < s.size(); ++k) c.items.emplace_back(s[k], mult[k]);
      out.push_back(std::move(c));
    };
    auto recurse = [&](auto&& self, std::size_t idx, std::vector<int>& used) -> void {
      if (idx == s.size()) {
        emit();
        return;
      }
      const int step = graph.vertices[s[idx]].step;
      // Reserve one slot for each later vertex of the same step.
      int later = 0;
      for (std::size_t j = idx + 1; j < s.size(); ++j) later += graph.vertices[s[j]].step == step;
      for (int m = 1; used[step] + m + later <= M; ++m) {
        mult[idx] = m;
        used[step] += m;
        self(self, idx + 1, used);
        used[step] -= m;
      }
    };
    std::vector<int> used(graph.num_steps, 0);
    recurse(recurse, 0, used);
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    const int sa = a.size(), sb = b.size();
    if (sa != sb) return sa < sb;
    const auto qa = a.sequence(), qb = b.sequence();
    if (qa != qb) return qa < qb;
    return a.items < b.items;
  });
  return out;
}

PauliSum truncated_heisenberg(const EvolutionPlan& plan, const PauliTerm& o, const TruncationPlan& trunc,
                              const HeisenbergOptions& opts) {
  if (o.num_qubits() != plan.n) throw DimensionError("observable and plan differ in qubit count");
  if (trunc.M < 1) throw ValueError("truncation order must be positive");
  PauliSum acc(plan.n, opts.prune);
  acc.add(o.key(), o.phase_value());
  if (o.is_identity()) return acc;
  // U = e^{-iH_K t_K} ... e^{-iH_1 t_1}, so the innermost conjugation belongs to step K.
  for (int k = plan.num_steps() - 1; k >= 0; --k) {
    const PauliSum h = plan.hams[k].as_sum();
    const Complex it(0, plan.times[k]);
    PauliSum term = acc;
    for (int j = 1; j <= trunc.M; ++j) {
      term = commutator(h, term) * (it / static_cast<double>(j));
      if (term.empty()) break;
      acc += term;
      if (acc.size() > opts.max_terms || term.size() > opts.max_terms) {
        throw CapacityError("truncated Heisenberg operator exceeds " + std::to_string(opts.max_terms) + " terms");
      }
    }
  }
  return acc.hermitian_part(1e-9);
}

std::uint64_t term_count_bound(const TruncationPlan& trunc, int K, int locality, int degree) {
  if (K < 1 || locality < 1 || trunc.M < 1 || degree < 0) throw ValueError("term_count_bound: arguments must be positive");
  const double log_bound = static_cast<double>(K) * locality * trunc.M * std::log(4.0) +
                           trunc.M * std::log(std::max(1.0, std::numbers::e * degree));
  if (log_bound >= 64 * std::log(2.0)) return std::numeric_limits<std::uint64_t>::max();
  const double v = std::ceil(std::pow(4.0, static_cast<double>(K) * locality * trunc.M) *
                             std::pow(std::max(1.0, std::numbers::e * degree), trunc.M));
  if (v >= 18446744073709551615.0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(v);
}

}  // namespace hamlearn
