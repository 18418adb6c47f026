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

#include "hamlearn/learner.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "hamlearn/errors.hpp"
#include "hamlearn/parallel.hpp"
#include "json.hpp"

namespace hamlearn {

namespace {

/// Per-record input masks: which qubits were prepared along each axis, and which with sign -1.
struct RecordMasks {
  std::uint64_t x = 0, y = 0, z = 0, minus = 0;
};

std::vector<RecordMasks> record_masks(const Dataset& data) {
  std::vector<RecordMasks> out(data.size());
  for (std::uint64_t l = 0; l < data.size(); ++l) {
    RecordMasks m;
    for (int q = 0; q < data.n; ++q) {
      const StabilizerLabel s = data.label(l, q);
      const std::uint64_t bit = std::uint64_t{1} << q;
      switch (label_axis(s)) {
        case Pauli::X: m.x |= bit; break;
        case Pauli::Y: m.y |= bit; break;
        default: m.z |= bit; break;
      }
      if (label_sign(s) < 0) m.minus |= bit;
    }
    out[l] = m;
  }
  return out;
}

/// <psi_l|q|psi_l> from the masks.
inline int input_expectation(const RecordMasks& m, const PauliKey& q) {
  const std::uint64_t qx = q.x & ~q.z, qy = q.x & q.z, qz = ~q.x & q.z;
  if ((qx & ~m.x) | (qy & ~m.y) | (qz & ~m.z)) return 0;
  return (std::popcount(q.support() & m.minus) & 1) ? -1 : 1;
}

Basis axis_basis(Pauli o) {
  switch (o) {
    case Pauli::X: return Basis::X;
    case Pauli::Y: return Basis::Y;
    case Pauli::Z: return Basis::Z;
    default: throw ValueError("identity has no measurement basis");
  }
}

CoefficientStats finish(double sum, double sum_sq, std::uint64_t N) {
  CoefficientStats s;
  const double n = static_cast<double>(N);
  s.alpha = sum / n;
  if (N > 1) {
    const double var = std::max(0.0, (sum_sq - n * s.alpha * s.alpha) / (n - 1));
    s.std_error = std::sqrt(var / n);
  }
  return s;
}

void check_o(const Dataset& data, int qubit, Pauli o) {
  if (qubit < 0 || qubit >= data.n) throw DimensionError("qubit index out of range");
  if (o == Pauli::I) throw ValueError("base observable must be X, Y or Z");
}

}  // namespace

PauliSum LearnedLocalOperator::raw_estimate() const {
  PauliSum s(estimate.num_qubits());
  for (const auto& c : coefficients) s.add(c.key, c.alpha);
  return s;
}

double estimate_u(const Dataset& data, std::uint64_t record, int qubit, Pauli o) {
  check_o(data, qubit, o);
  if (data.basis(record, qubit) != axis_basis(o)) return 0.0;
  return 3.0 * data.outcome_sign(record, qubit);
}

std::vector<PauliKey> candidate_paulis(const InteractionGraph& graph, int qubit, const TruncationPlan& trunc,
                                       std::size_t max_candidates) {
  if (qubit < 0 || qubit >= graph.n) throw DimensionError("qubit index out of range");
  const std::uint64_t site = std::uint64_t{1} << qubit;
  std::set<std::uint64_t> regions{site};
  for (const auto& s : connected_vertex_sets(graph, site, trunc.M)) {
    std::uint64_t r = site;
    for (int v : s) r |= graph.vertices[v].support;
    regions.insert(r);
  }
  // Drop regions contained in a larger one; their strings are enumerated there.
  std::vector<std::uint64_t> maximal;
  for (auto r : regions) {
    bool covered = false;
    for (auto other : regions) covered |= other != r && (r & ~other) == 0;
    if (!covered) maximal.push_back(r);
  }
  std::set<PauliKey> keys;
  for (auto r : maximal) {
    const int w = std::popcount(r);
    if (2 * w >= 63 || (std::size_t{1} << (2 * w)) - 1 > max_candidates) throw CapacityError("candidate region too large");
    std::vector<int> qs;
    for (std::uint64_t m = r; m; m &= m - 1) qs.push_back(std::countr_zero(m));
    const std::uint64_t count = std::uint64_t{1} << (2 * w);
    for (std::uint64_t code = 1; code < count; ++code) {
      PauliKey k;
      for (int j = 0; j < w; ++j) {
        const unsigned letter = (code >> (2 * j)) & 3;
        if (letter == 1 || letter == 2) k.x |= std::uint64_t{1} << qs[j];
        if (letter == 2 || letter == 3) k.z |= std::uint64_t{1} << qs[j];
      }
      keys.insert(k);
    }
    if (keys.size() > max_candidates) throw CapacityError("candidate set exceeds " + std::to_string(max_candidates));
  }
  return {keys.begin(), keys.end()};
}

CoefficientStats estimate_coefficient(const Dataset& data, const PauliKey& q, int qubit, Pauli o) {
  check_o(data, qubit, o);
  if (data.size() == 0) throw ValueError("empty dataset");
  const double scale = std::pow(3.0, q.weight());
  double sum = 0, sum_sq = 0;
  for (std::uint64_t l = 0; l < data.size(); ++l) {
    const double u = estimate_u(data, l, qubit, o);
    if (u == 0) continue;
    std::vector<StabilizerLabel> labels(data.n);
    for (int j = 0; j < data.n; ++j) labels[j] = data.label(l, j);
    const double v = scale * u * expect_product_state(q, labels);
    sum += v;
    sum_sq += v * v;
  }
  return finish(sum, sum_sq, data.size());
}

std::vector<LearnedLocalOperator> learn_local_operators(const Dataset& data, const InteractionGraph& graph,
                                                        const TruncationPlan& trunc, const LearnConfig& cfg) {
  if (data.size() == 0) throw ValueError("empty dataset");
  if (graph.n != data.n) throw DimensionError("dataset and plan differ in qubit count");
  const auto masks = record_masks(data);
  const int n = data.n;
  std::vector<std::vector<PauliKey>> candidates(n);
  for (int i = 0; i < n; ++i) candidates[i] = candidate_paulis(graph, i, trunc, cfg.max_candidates);

  std::vector<LearnedLocalOperator> out(3 * static_cast<std::size_t>(n));
  parallel_for(out.size(), cfg.threads, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / 3);
    const Pauli o = static_cast<Pauli>(idx % 3 + 1);
    const Basis b = axis_basis(o);
    const auto& cands = candidates[i];
    std::vector<double> sum(cands.size(), 0), sum_sq(cands.size(), 0);
    std::vector<double> scale(cands.size());
    for (std::size_t j = 0; j < cands.size(); ++j) scale[j] = std::pow(3.0, cands[j].weight());
    for (std::uint64_t l = 0; l < data.size(); ++l) {
      if (data.basis(l, i) != b) continue;
      const double u = 3.0 * data.outcome_sign(l, i);
      for (std::size_t j = 0; j < cands.size(); ++j) {
        const int e = input_expectation(masks[l], cands[j]);
        if (e == 0) continue;
        const double v = scale[j] * u * e;
        sum[j] += v;
        sum_sq[j] += v * v;
      }
    }
    LearnedLocalOperator op;
    op.qubit = i;
    op.base = o;
    op.estimate = PauliSum(n);
    for (std::size_t j = 0; j < cands.size(); ++j) {
      const CoefficientStats s = finish(sum[j], sum_sq[j], data.size());
      CoefficientEstimate c{cands[j], s.alpha, s.std_error, true};
      if (cfg.threshold && std::abs(s.alpha) < cfg.threshold_sigmas * s.std_error) c.kept = false;
      if (s.alpha == 0) c.kept = false;
      if (c.kept) op.estimate.add(c.key, c.alpha);
      op.coefficients.push_back(c);
    }
    out[idx] = std::move(op);
  });
  return out;
}

SampleSize sample_size(const LearnConfig& cfg, int n, int K, int locality, int degree, int M) {
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1) || !(cfg.delta > 0 && cfg.delta < 1)) throw ValueError("epsilon and delta must lie in (0, 1)");
  if (n < 1 || K < 1 || locality < 1 || M < 1 || degree < 0) throw ValueError("sample_size: arguments must be positive");
  const double base = std::max(1.0, std::pow(4.0, static_cast<double>(K) * locality) * 3 * std::numbers::e * degree);
  const double log_n = 2 * std::log(static_cast<double>(n)) + cfg.c * M * std::log(base) + std::log(std::log(1 / cfg.delta)) -
                       2 * std::log(cfg.epsilon);
  SampleSize s;
  if (cfg.N_override) {
    s.N = *cfg.N_override;
    return s;
  }
  if (log_n >= 63 * std::log(2.0)) {
    s.N = std::numeric_limits<std::uint64_t>::max();
    s.saturated = true;
    return s;
  }
  const double v = static_cast<double>(n) * n * std::pow(base, cfg.c * M) * std::log(1 / cfg.delta) / (cfg.epsilon * cfg.epsilon);
  s.N = static_cast<std::uint64_t>(std::ceil(v));
  return s;
}

std::string model_to_json(const std::vector<LearnedLocalOperator>& locals, int n) {
  using nlohmann::json;
  json doc;
  doc["format"] = "hamlearn-model";
  doc["version"] = 1;
  doc["n"] = n;
  json arr = json::array();
  for (const auto& op : locals) {
    json terms = json::array();
    for (const auto& c : op.coefficients) {
      terms.push_back({{"pauli", PauliTerm(n, c.key).to_string().substr(1)},
                       {"coeff", c.alpha},
                       {"stderr", c.std_error},
                       {"kept", c.kept}});
    }
    arr.push_back({{"qubit", op.qubit}, {"base", std::string(1, pauli_char(op.base))}, {"candidates", op.num_candidates()}, {"terms", terms}});
  }
  doc["locals"] = arr;
  return doc.dump(1) + "\n";
}

std::vector<LearnedLocalOperator> model_from_json(const std::string& text, const std::string& source) {
  using nlohmann::json;
  std::vector<LearnedLocalOperator> out;
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != "hamlearn-model" || doc.at("version") != 1) throw ParseError(source, "unsupported model format");
    const int n = doc.at("n").get<int>();
    for (const auto& e : doc.at("locals")) {
      LearnedLocalOperator op;
      op.qubit = e.at("qubit").get<int>();
      op.base = pauli_from_char(e.at("base").get<std::string>().at(0));
      op.estimate = PauliSum(n);
      for (const auto& t : e.at("terms")) {
        const PauliTerm p = PauliTerm::parse(t.at("pauli").get<std::string>());
        if (p.num_qubits() != n) throw ParseError(source, "model term has wrong length");
        CoefficientEstimate c{p.key(), t.at("coeff").get<double>(), t.at("stderr").get<double>(), t.at("kept").get<bool>()};
        if (c.kept) op.estimate.add(c.key, c.alpha);
        op.coefficients.push_back(c);
      }
      out.push_back(std::move(op));
    }
  } catch (const json::exception& e) {
    throw ParseError(source, std::string("malformed model: ") + e.what());
  } catch (const ValueError& e) {
    throw ParseError(source, std::string("malformed model: ") + e.what());
  }
  return out;
}

}  // namespace hamlearn
