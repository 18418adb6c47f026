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

#include "hamlearn/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "hamlearn/dense.hpp"
#include "hamlearn/errors.hpp"
#include "json.hpp"

namespace hamlearn {

using nlohmann::json;

PauliSum HamiltonianSpec::as_sum() const {
  PauliSum h(n);
  for (const auto& t : terms) h.add_scaled(t.body, t.coeff);
  return h;
}

int HamiltonianSpec::locality() const {
  int lam = 0;
  for (const auto& t : terms) lam = std::max(lam, static_cast<int>(t.qubits.size()));
  return lam;
}

double EvolutionPlan::max_time() const {
  double t = 0;
  for (double tk : times) t = std::max(t, std::abs(tk));
  return t;
}

int EvolutionPlan::locality() const {
  int lam = 0;
  for (const auto& h : hams) lam = std::max(lam, h.locality());
  return lam;
}

HamiltonianTerm make_term(int n, std::vector<int> qubits, double coeff, const std::string& word) {
  HamiltonianTerm t;
  const PauliTerm p = PauliTerm::on_qubits(n, qubits, word);
  for (char c : word) {
    if (pauli_from_char(c) == Pauli::I) throw ValueError("term word '" + word + "' has an identity letter");
  }
  t.qubits = std::move(qubits);
  t.coeff = coeff;
  t.word = word;
  t.body = PauliSum(p);
  t.support = p.support_mask();
  return t;
}

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw ParseError(source.empty() ? where : source + ":" + where, what);
}

const json& require(const json& obj, const char* key, const std::string& source, const std::string& where) {
  if (!obj.is_object()) fail(source, where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(source, where, std::string("missing field '") + key + "'");
  return *it;
}

int as_int(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number_integer()) fail(source, where, "expected an integer");
  return v.get<int>();
}

double as_number(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number()) fail(source, where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(source, where, "number is not finite");
  return d;
}

}  // namespace

void validate_plan(const EvolutionPlan& plan, const ParseOptions& opts) {
  if (plan.n < 1 || plan.n > kMaxQubits) throw ValueError("qubit count must be in [1, 64]");
  if (plan.dimension < 1) throw ValueError("dimension must be positive");
  if (plan.hams.empty()) throw ValueError("plan has no steps");
  if (plan.hams.size() != plan.times.size()) throw ValueError("steps and times differ in length");
  if (plan.coords && static_cast<int>(plan.coords->size()) != plan.n) throw ValueError("coords must list every qubit");
  for (std::size_t k = 0; k < plan.hams.size(); ++k) {
    const auto& h = plan.hams[k];
    if (h.n != plan.n) throw DimensionError("step Hamiltonian has a different qubit count");
    if (h.terms.empty()) throw ValueError("step " + std::to_string(k) + " has no terms");
    if (!std::isfinite(plan.times[k]) || std::abs(plan.times[k]) > opts.max_abs_time) {
      throw ValueError("step " + std::to_string(k) + " time outside allowed range");
    }
    for (const auto& t : h.terms) {
      if (!(std::abs(t.coeff) <= 1.0)) throw ValueError("term coefficient magnitude exceeds 1");
      if (t.body.num_qubits() != plan.n) throw DimensionError("term body has a different qubit count");
      if ((t.body.support_mask() & ~t.support) != 0) throw ValueError("term body leaves its support");
      if (static_cast<int>(t.qubits.size()) <= kDenseLimit) {
        std::vector<int> local;
        if (spectral_norm(to_dense(compress_support(t.body, local))) > 1.0 + 1e-12) {
          throw ValueError("term body has operator norm above 1");
        }
      }
    }
  }
}

EvolutionPlan parse_spec(const std::string& text, const std::string& source, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source, "byte " + std::to_string(e.byte), "malformed document");
  }
  EvolutionPlan plan;
  plan.n = as_int(require(doc, "n", source, "$"), source, "n");
  if (plan.n < 1 || plan.n > kMaxQubits) fail(source, "n", "qubit count must be in [1, 64]");
  plan.dimension = doc.contains("dimension") ? as_int(doc["dimension"], source, "dimension") : 1;
  if (plan.dimension < 1) fail(source, "dimension", "must be positive");
  if (doc.contains("coords") && !doc["coords"].is_null()) {
    const json& cs = doc["coords"];
    if (!cs.is_array() || static_cast<int>(cs.size()) != plan.n) fail(source, "coords", "expected one coordinate tuple per qubit");
    std::vector<std::vector<int>> coords;
    for (std::size_t q = 0; q < cs.size(); ++q) {
      const std::string where = "coords[" + std::to_string(q) + "]";
      if (!cs[q].is_array() || static_cast<int>(cs[q].size()) != plan.dimension) fail(source, where, "tuple length must equal dimension");
      std::vector<int> c;
      for (std::size_t d = 0; d < cs[q].size(); ++d) c.push_back(as_int(cs[q][d], source, where));
      coords.push_back(std::move(c));
    }
    plan.coords = std::move(coords);
  }
  const json& steps = require(doc, "steps", source, "$");
  if (!steps.is_array() || steps.empty()) fail(source, "steps", "expected a nonempty array");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::string sw = "steps[" + std::to_string(k) + "]";
    const double time = as_number(require(steps[k], "time", source, sw), source, sw + ".time");
    if (std::abs(time) > opts.max_abs_time) fail(source, sw + ".time", "magnitude exceeds " + std::to_string(opts.max_abs_time));
    const json& terms = require(steps[k], "terms", source, sw);
    if (!terms.is_array() || terms.empty()) fail(source, sw + ".terms", "expected a nonempty array");
    HamiltonianSpec h;
    h.n = plan.n;
    h.dimension = plan.dimension;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const std::string tw = sw + ".terms[" + std::to_string(j) + "]";
      const json& qs = require(terms[j], "qubits", source, tw);
      if (!qs.is_array() || qs.empty()) fail(source, tw + ".qubits", "expected a nonempty array");
      std::vector<int> qubits;
      for (const auto& q : qs) qubits.push_back(as_int(q, source, tw + ".qubits"));
      const double coeff = as_number(require(terms[j], "coeff", source, tw), source, tw + ".coeff");
      if (!(std::abs(coeff) <= 1.0)) fail(source, tw + ".coeff", "coefficient magnitude exceeds 1");
      const json& word = require(terms[j], "pauli", source, tw);
      if (!word.is_string()) fail(source, tw + ".pauli", "expected a string");
      try {
        h.terms.push_back(make_term(plan.n, qubits, coeff, word.get<std::string>()));
      } catch (const Error& e) {
        fail(source, tw, e.what());
      }
    }
    plan.hams.push_back(std::move(h));
    plan.times.push_back(time);
  }
  try {
    validate_plan(plan, opts);
  } catch (const Error& e) {
    fail(source, "$", e.what());
  }
  return plan;
}

EvolutionPlan load_plan(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open plan file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path, opts);
}

std::string serialize_plan(const EvolutionPlan& plan) {
  json doc;
  doc["n"] = plan.n;
  doc["dimension"] = plan.dimension;
  if (plan.coords) doc["coords"] = *plan.coords;
  json steps = json::array();
  for (std::size_t k = 0; k < plan.hams.size(); ++k) {
    json terms = json::array();
    for (const auto& t : plan.hams[k].terms) {
      terms.push_back({{"qubits", t.qubits}, {"coeff", t.coeff}, {"pauli", t.word}});
    }
    steps.push_back({{"time", plan.times[k]}, {"terms", terms}});
  }
  doc["steps"] = steps;
  return doc.dump(2) + "\n";
}

InteractionGraph interaction_graph(const EvolutionPlan& plan) {
  InteractionGraph g;
  g.n = plan.n;
  g.num_steps = plan.num_steps();
  for (int k = 0; k < plan.num_steps(); ++k) {
    for (int j = 0; j < static_cast<int>(plan.hams[k].terms.size()); ++j) {
      g.vertices.push_back({k, j, plan.hams[k].terms[j].support});
    }
  }
  const int nv = static_cast<int>(g.vertices.size());
  g.adjacency.assign(nv, {});
  for (int u = 0; u < nv; ++u) {
    for (int v = u + 1; v < nv; ++v) {
      if (g.vertices[u].support & g.vertices[v].support) {
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
        ++g.num_edges;
      }
    }
  }
  for (const auto& adj : g.adjacency) g.max_degree = std::max(g.max_degree, static_cast<int>(adj.size()));
  return g;
}

double critical_time(int num_steps, int degree) {
  if (degree <= 0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * std::numbers::e * num_steps * degree);
}

bool is_short_time(const EvolutionPlan& plan, const InteractionGraph& graph) {
  return plan.max_time() < critical_time(plan.num_steps(), graph.max_degree);
}

EvolutionPlan tfim_chain(int n, double time, double zz, double field) {
  EvolutionPlan plan;
  plan.n = n;
  plan.dimension = 1;
  HamiltonianSpec h;
  h.n = n;
  for (int q = 0; q + 1 < n; ++q) h.terms.push_back(make_term(n, {q, q + 1}, zz, "ZZ"));
  for (int q = 0; q < n; ++q) h.terms.push_back(make_term(n, {q}, field, "X"));
  std::vector<std::vector<int>> coords;
  for (int q = 0; q < n; ++q) coords.push_back({q});
  plan.coords = coords;
  plan.hams.push_back(std::move(h));
  plan.times.push_back(time);
  return plan;
}

EvolutionPlan tfim_grid(int rows, int cols, double time, double zz, double field) {
  const int n = rows * cols;
  EvolutionPlan plan;
  plan.n = n;
  plan.dimension = 2;
  HamiltonianSpec h;
  h.n = n;
  auto idx = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) h.terms.push_back(make_term(n, {idx(r, c), idx(r, c + 1)}, zz, "ZZ"));
      if (r + 1 < rows) h.terms.push_back(make_term(n, {idx(r, c), idx(r + 1, c)}, zz, "ZZ"));
    }
  }
  for (int q = 0; q < n; ++q) h.terms.push_back(make_term(n, {q}, field, "X"));
  std::vector<std::vector<int>> coords;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) coords.push_back({c, r});
  }
  plan.coords = coords;
  plan.hams.push_back(std::move(h));
  plan.times.push_back(time);
  return plan;
}

}  // namespace hamlearn
