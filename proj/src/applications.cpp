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

#include "hamlearn/applications.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "hamlearn/errors.hpp"
#include "hamlearn/parallel.hpp"

namespace hamlearn {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::vector<const LearnedLocalOperator*> slots(const std::vector<LearnedLocalOperator>& locals, int n) {
  std::vector<const LearnedLocalOperator*> s(3 * static_cast<std::size_t>(n), nullptr);
  for (const auto& op : locals) {
    if (op.qubit < 0 || op.qubit >= n || op.base == Pauli::I) throw DimensionError("local operator outside the register");
    s[local_index(op.qubit, op.base)] = &op;
  }
  return s;
}

const LearnedLocalOperator& slot_at(const std::vector<const LearnedLocalOperator*>& s, int q, Pauli p) {
  const auto* op = s[local_index(q, p)];
  if (!op) throw ValueError("missing learned local for qubit " + std::to_string(q));
  return *op;
}

PauliSum identity_sum(int n) {
  PauliSum s(n);
  s.add(PauliKey{}, 1.0);
  return s;
}

}  // namespace

ClassicalState ClassicalState::basis_state(int n, std::uint64_t bits) {
  ClassicalState s;
  s.n = n;
  s.configs.emplace_back(bits, 1.0);
  return s;
}

ClassicalState ClassicalState::from_labels(std::span<const StabilizerLabel> labels) {
  ClassicalState s;
  s.n = static_cast<int>(labels.size());
  const double h = 1 / std::sqrt(2.0);
  s.configs.emplace_back(0, 1.0);
  for (int q = 0; q < s.n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    std::vector<std::pair<std::uint64_t, Complex>> next;
    for (const auto& [c, a] : s.configs) {
      switch (labels[q]) {
        case StabilizerLabel::ZPlus: next.emplace_back(c, a); break;
        case StabilizerLabel::ZMinus: next.emplace_back(c | bit, a); break;
        case StabilizerLabel::XPlus:
        case StabilizerLabel::XMinus:
          next.emplace_back(c, a * h);
          next.emplace_back(c | bit, a * h * static_cast<double>(label_sign(labels[q])));
          break;
        case StabilizerLabel::YPlus:
        case StabilizerLabel::YMinus:
          next.emplace_back(c, a * h);
          next.emplace_back(c | bit, a * h * Complex(0, label_sign(labels[q])));
          break;
      }
    }
    s.configs = std::move(next);
  }
  return s;
}

void ClassicalState::validate(double tol) const {
  if (configs.empty()) throw ValueError("classical state has no configurations");
  double norm = 0;
  std::set<std::uint64_t> seen;
  for (const auto& [c, a] : configs) {
    if (n < 64 && (c >> n) != 0) throw DimensionError("configuration addresses qubits beyond n");
    if (!seen.insert(c).second) throw ValueError("repeated configuration");
    norm += std::norm(a);
  }
  if (std::abs(norm - 1) > tol) throw ValueError("classical state is not normalized");
}

DenseVector ClassicalState::dense() const {
  if (n > kStateLimit) throw CapacityError("classical state too large for dense form");
  DenseVector v = DenseVector::Zero(Eigen::Index{1} << n);
  for (const auto& [c, a] : configs) v(static_cast<Eigen::Index>(c)) += a;
  return v;
}

Complex expectation(const ClassicalState& phi, const PauliSum& p) {
  if (phi.n != p.num_qubits()) throw DimensionError("state and operator differ in qubit count");
  std::map<std::uint64_t, Complex> amp(phi.configs.begin(), phi.configs.end());
  Complex acc = 0;
  for (const auto& [key, c] : p.terms()) {
    const Complex base = c * kPhases[std::popcount(key.x & key.z) & 3];
    for (const auto& [a, va] : phi.configs) {
      auto it = amp.find(a ^ key.x);
      if (it == amp.end()) continue;
      const double sign = (std::popcount(a & key.z) & 1) ? -1.0 : 1.0;
      acc += std::conj(it->second) * base * sign * va;
    }
  }
  return acc;
}

MeanPrediction predict_mean_value(const std::vector<LearnedLocalOperator>& locals, const ClassicalState& phi,
                                  const PauliSum& o, bool use_raw) {
  const int n = phi.n;
  if (o.num_qubits() != n) throw DimensionError("observable and state differ in qubit count");
  const auto s = slots(locals, n);
  MeanPrediction out;
  std::map<std::pair<std::size_t, PauliKey>, Complex> grad;
  Complex value = 0;
  for (const auto& [key, c] : o.terms()) {
    if (key.is_identity()) {
      value += c;
      continue;
    }
    std::vector<std::size_t> idx;
    std::vector<PauliSum> factors;
    for (std::uint64_t m = key.support(); m; m &= m - 1) {
      const int q = std::countr_zero(m);
      const auto& op = slot_at(s, q, key.at(q));
      idx.push_back(local_index(q, key.at(q)));
      factors.push_back(use_raw ? op.raw_estimate() : op.estimate);
    }
    const std::size_t k = factors.size();
    // prefix[j] = F_0 ... F_{j-1}, suffix[j] = F_j ... F_{k-1}.
    std::vector<PauliSum> prefix(k + 1, identity_sum(n)), suffix(k + 1, identity_sum(n));
    for (std::size_t j = 0; j < k; ++j) prefix[j + 1] = product(prefix[j], factors[j]);
    for (std::size_t j = k; j-- > 0;) suffix[j] = product(factors[j], suffix[j + 1]);
    value += c * expectation(phi, prefix[k]);
    for (std::size_t j = 0; j < k; ++j) {
      const auto& op = *s[idx[j]];
      for (const auto& coef : op.coefficients) {
        if (coef.std_error == 0) continue;
        PauliSum q(n);
        q.add(coef.key, 1.0);
        grad[{idx[j], coef.key}] += c * expectation(phi, product(product(prefix[j], q), suffix[j + 1]));
      }
    }
  }
  double var = 0;
  for (const auto& [id, g] : grad) {
    const auto& op = *s[id.first];
    for (const auto& coef : op.coefficients) {
      if (coef.key == id.second) var += std::norm(g.real()) * coef.std_error * coef.std_error;
    }
  }
  out.value = value.real();
  out.std_error = std::sqrt(var);
  return out;
}

Region2D strip_partition(const std::vector<std::vector<int>>& coords, int M, int axis) {
  if (M < 1) throw ValueError("strip partition needs M >= 1");
  Region2D part;
  part.strip_width = 2 * M;
  part.axis = axis;
  for (const auto& c : coords) {
    if (axis < 0 || axis >= static_cast<int>(c.size())) throw DimensionError("partition axis out of range");
    const int strip = (c[axis] >= 0 ? c[axis] : c[axis] - part.strip_width + 1) / part.strip_width;
    part.region.push_back(((strip % 2) + 2) % 2);
  }
  return part;
}

int min_same_region_separation(const Region2D& part, const std::vector<std::vector<int>>& coords) {
  int best = std::numeric_limits<int>::max();
  auto strip_of = [&](int q) {
    const int x = coords[q][part.axis];
    return (x >= 0 ? x : x - part.strip_width + 1) / part.strip_width;
  };
  for (std::size_t a = 0; a < coords.size(); ++a) {
    for (std::size_t b = a + 1; b < coords.size(); ++b) {
      if (part.region[a] != part.region[b] || strip_of(a) == strip_of(b)) continue;
      int d = 0;
      for (std::size_t k = 0; k < coords[a].size(); ++k) d += std::abs(coords[a][k] - coords[b][k]);
      best = std::min(best, d);
    }
  }
  return best;
}

MonteCarloResult mc_sew_2d(const std::vector<DenseOperator>& per_qubit, const Region2D& part, std::uint64_t shots,
                           std::uint64_t seed, int threads) {
  const int n = static_cast<int>(per_qubit.size());
  if (static_cast<int>(part.region.size()) != n) throw DimensionError("partition does not cover every qubit");
  if (n > kStateLimit) throw CapacityError("Monte-Carlo sewing limited to dense-feasible grids");
  if (shots == 0) throw ValueError("shots must be positive");
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator v1 = DenseOperator::Identity(dim, dim), v2 = DenseOperator::Identity(dim, dim);
  for (int q = 0; q < n; ++q) {
    if (per_qubit[q].rows() != dim) throw DimensionError("per-qubit operator has the wrong size");
    if (part.region[q] == 0) {
      v1 = v1 * per_qubit[q];
    } else {
      v2 = v2 * per_qubit[q];
    }
  }
  const Eigen::VectorXcd a = v1.row(0).transpose();
  const Eigen::VectorXcd b = v2.col(0);
  MonteCarloResult res;
  res.gamma1 = a.squaredNorm();
  res.gamma2 = b.squaredNorm();
  if (res.gamma1 <= 0) throw ValueError("degenerate sampling distribution: gamma1 = 0");
  std::vector<double> cdf(dim);
  double acc = 0;
  Complex mean = 0;
  double second = 0;
  for (Eigen::Index x = 0; x < dim; ++x) {
    const double p = std::norm(a(x)) / res.gamma1;
    acc += p;
    cdf[x] = acc;
    res.exact += a(x) * b(x);
    if (p > 0) {
      const Complex f = res.gamma1 * b(x) / std::conj(a(x));
      mean += p * f;
      second += p * std::norm(f);
    }
  }
  res.normalization = acc;
  res.enumerated_mean = mean;
  res.variance_enumerated = second - std::norm(mean);
  res.variance_formula = res.gamma1 * res.gamma2 - std::norm(res.exact);

  std::vector<Complex> f(shots);
  parallel_for(shots, threads, [&](std::size_t s) {
    CounterRng rng = substream(seed, StreamTag::MonteCarlo, s);
    for (;;) {
      const double u = rng.uniform() * acc;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const Eigen::Index x = std::min<Eigen::Index>(it - cdf.begin(), dim - 1);
      if (std::abs(a(x)) == 0) continue;
      f[s] = res.gamma1 * b(x) / std::conj(a(x));
      return;
    }
  });
  Complex sum = 0;
  for (const auto& v : f) sum += v;
  res.estimate = sum / static_cast<double>(shots);
  double ss = 0;
  for (const auto& v : f) ss += std::norm(v - res.estimate);
  if (shots > 1) res.std_error = std::sqrt(ss / static_cast<double>(shots - 1) / static_cast<double>(shots));
  return res;
}

MonteCarloResult mc_sew_2d(const std::vector<LearnedLocalOperator>& locals, int n, const std::vector<Pauli>& observable,
                           const Region2D& part, std::uint64_t shots, std::uint64_t seed, int threads) {
  if (static_cast<int>(observable.size()) != n) throw DimensionError("observable must list one letter per qubit");
  const auto s = slots(locals, n);
  std::vector<DenseOperator> per_qubit;
  for (int q = 0; q < n; ++q) {
    if (observable[q] == Pauli::I) {
      per_qubit.push_back(DenseOperator::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n));
    } else {
      per_qubit.push_back(to_dense(slot_at(s, q, observable[q]).estimate, kStateLimit));
    }
  }
  return mc_sew_2d(per_qubit, part, shots, seed, threads);
}

double ClassifierModel::predict(const ClassicalState& phi) const {
  double f = 0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    PauliSum q(n);
    q.add(basis[j], 1.0);
    f += weights(static_cast<Eigen::Index>(j)) * expectation(phi, q).real();
  }
  return f;
}

ClassifierModel train_classifier(const std::vector<ClassicalState>& features, const Eigen::VectorXd& labels,
                                 const std::vector<PauliKey>& basis) {
  if (features.empty() || static_cast<Eigen::Index>(features.size()) != labels.size()) {
    throw DimensionError("features and labels must be nonempty and of equal length");
  }
  if (basis.empty()) throw ValueError("classifier basis is empty");
  ClassifierModel model;
  model.n = features.front().n;
  model.basis = basis;
  const Eigen::Index N = static_cast<Eigen::Index>(features.size());
  const Eigen::Index L = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd phi(N, L);
  for (Eigen::Index i = 0; i < N; ++i) {
    if (features[i].n != model.n) throw DimensionError("features differ in qubit count");
    for (Eigen::Index j = 0; j < L; ++j) {
      PauliSum q(model.n);
      q.add(basis[j], 1.0);
      phi(i, j) = expectation(features[i], q).real();
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(phi);
  model.rank = cod.rank();
  if (model.rank < std::min(N, L)) {
    model.ridge = true;
    model.ridge_lambda = 1e-8 * phi.squaredNorm();
    model.warning = "feature matrix is rank deficient (rank " + std::to_string(model.rank) + "); ridge-regularized solve";
    const Eigen::MatrixXd gram = phi.transpose() * phi + model.ridge_lambda * Eigen::MatrixXd::Identity(L, L);
    model.weights = gram.ldlt().solve(phi.transpose() * labels);
  } else {
    model.weights = cod.solve(labels);
  }
  model.residual = (phi * model.weights - labels).norm();
  return model;
}

ClassifierModel train_classifier(const std::vector<ClassicalState>& features, const Eigen::VectorXd& labels,
                                 const PauliSum& o, const InteractionGraph& graph, const TruncationPlan& trunc) {
  std::set<PauliKey> keys;
  for (std::uint64_t m = o.support_mask(); m; m &= m - 1) {
    for (const auto& k : candidate_paulis(graph, std::countr_zero(m), trunc)) keys.insert(k);
  }
  return train_classifier(features, labels, std::vector<PauliKey>(keys.begin(), keys.end()));
}

BenchReport noise_benchmark(const EvolutionPlan& plan, const NoiseModel& noise, const TruncationPlan& trunc,
                            std::uint64_t N, std::uint64_t seed, const LearnConfig& cfg) {
  const int n = plan.n;
  if (n > kDensityLimit) throw CapacityError("noise benchmark limited to density-feasible sizes");
  const InteractionGraph graph = interaction_graph(plan);
  const LearnedChannel oracle = sew_channel(oracle_locals(plan, noise), n);
  const Dataset ds = sample_dataset(plan, N, seed, noise, SampleOptions{cfg.threads});
  const auto learned = learn_local_operators(ds, graph, trunc, cfg);
  const LearnedChannel sampled = sew_channel(learned, n);
  const DenseOperator u = evolution_unitary(plan);

  BenchReport rep;
  rep.gamma = noise.gamma;
  std::vector<std::pair<std::string, PauliTerm>> observables;
  for (int q = 0; q < n; ++q) {
    observables.emplace_back("Z" + std::to_string(q), PauliTerm::single(n, q, Pauli::Z));
    observables.emplace_back("X" + std::to_string(q), PauliTerm::single(n, q, Pauli::X));
  }
  for (int q = 0; q + 1 < n; ++q) {
    observables.emplace_back("Z" + std::to_string(q) + "Z" + std::to_string(q + 1),
                             mul(PauliTerm::single(n, q, Pauli::Z), PauliTerm::single(n, q + 1, Pauli::Z)));
  }
  constexpr int kPanelStates = 4;
  for (int k = 0; k < kPanelStates; ++k) {
    CounterRng rng = substream(seed, StreamTag::Panel, static_cast<std::uint64_t>(k));
    std::vector<StabilizerLabel> labels(n);
    std::string name;
    for (int q = 0; q < n; ++q) {
      labels[q] = static_cast<StabilizerLabel>(rng.bounded(6));
      name += label_name(labels[q]);
    }
    const DenseVector psi = product_state(labels);
    const DenseOperator rho = psi * psi.adjoint();
    const DenseVector out = u * psi;
    const DenseOperator ideal = out * out.adjoint();
    const DenseOperator rho_oracle = apply_channel(oracle, rho);
    const DenseOperator rho_sampled = apply_channel(sampled, rho);
    for (const auto& [oname, o] : observables) {
      const DenseOperator od = to_dense(o);
      const double want = (od * ideal).trace().real();
      ObservableGap g;
      g.label = name + ":" + oname;
      g.oracle_gap = std::abs((od * rho_oracle).trace().real() - want);
      g.sampled_gap = std::abs((od * rho_sampled).trace().real() - want);
      rep.max_oracle_gap = std::max(rep.max_oracle_gap, g.oracle_gap);
      rep.max_sampled_gap = std::max(rep.max_sampled_gap, g.sampled_gap);
      rep.gaps.push_back(std::move(g));
    }
  }
  for (const auto& op : learned) {
    for (const auto& c : op.coefficients) {
      if (c.std_error > 0) rep.max_coefficient_z = std::max(rep.max_coefficient_z, std::abs(c.alpha) / c.std_error);
    }
  }
  rep.reference = noise.gamma * n * n;
  rep.ratio = rep.reference > 0 ? rep.max_oracle_gap / rep.reference : 0.0;
  rep.verdict = rep.max_oracle_gap <= rep.reference + 1e-12 ? "within_reference" : "exceeds_reference";
  return rep;
}

}  // namespace hamlearn
