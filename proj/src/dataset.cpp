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

#include "hamlearn/dataset.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "hamlearn/errors.hpp"

namespace hamlearn {

namespace {

constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 8 + 8 + 8 + 32;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(v);
  } else {
    bits = static_cast<std::uint64_t>(v);
  }
  for (std::size_t b = 0; b < sizeof(T); ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

std::uint64_t get_le(const std::uint8_t* p, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < width; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return v;
}

std::size_t record_bytes(int n) { return (6 * static_cast<std::size_t>(n) + 7) / 8; }

void set_bits(std::uint8_t* rec, std::size_t pos, unsigned width, unsigned value) {
  for (unsigned k = 0; k < width; ++k) {
    if ((value >> k) & 1) rec[(pos + k) / 8] |= static_cast<std::uint8_t>(1u << ((pos + k) % 8));
  }
}

unsigned get_bits(const std::uint8_t* rec, std::size_t pos, unsigned width) {
  unsigned v = 0;
  for (unsigned k = 0; k < width; ++k) v |= ((rec[(pos + k) / 8] >> ((pos + k) % 8)) & 1u) << k;
  return v;
}

}  // namespace

void Dataset::resize(std::uint64_t N) {
  labels.assign(N * n, 0);
  bases.assign(N * n, 0);
  outcomes.assign(N, 0);
}

std::vector<std::uint8_t> encode_dataset(const Dataset& ds) {
  std::vector<std::uint8_t> out(std::begin(kDatasetMagic), std::end(kDatasetMagic));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ds.n));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(ds.K));
  put_le<std::uint64_t>(out, ds.seed);
  put_le<std::uint64_t>(out, ds.size());
  put_le<double>(out, ds.gamma);
  out.insert(out.end(), ds.plan_digest.begin(), ds.plan_digest.end());
  const std::size_t rb = record_bytes(ds.n);
  const std::size_t n = static_cast<std::size_t>(ds.n);
  std::vector<std::uint8_t> rec(rb);
  for (std::uint64_t l = 0; l < ds.size(); ++l) {
    std::fill(rec.begin(), rec.end(), 0);
    for (std::size_t q = 0; q < n; ++q) {
      set_bits(rec.data(), 3 * q, 3, ds.labels[l * n + q]);
      set_bits(rec.data(), 3 * n + 2 * q, 2, ds.bases[l * n + q]);
      set_bits(rec.data(), 5 * n + q, 1, (ds.outcomes[l] >> q) & 1);
    }
    out.insert(out.end(), rec.begin(), rec.end());
  }
  return out;
}

Dataset decode_dataset(const std::vector<std::uint8_t>& bytes, const std::string& source) {
  auto bad = [&](const std::string& what) { return ParseError(source, "dataset: " + what); };
  if (bytes.size() < kHeaderSize) throw bad("truncated header");
  if (std::memcmp(bytes.data(), kDatasetMagic, 8) != 0) throw bad("bad magic or unsupported version");
  const std::uint8_t* p = bytes.data() + 8;
  Dataset ds;
  ds.n = static_cast<int>(get_le(p, 4));
  ds.K = static_cast<int>(get_le(p + 4, 4));
  ds.seed = get_le(p + 8, 8);
  const std::uint64_t N = get_le(p + 16, 8);
  ds.gamma = std::bit_cast<double>(get_le(p + 24, 8));
  std::memcpy(ds.plan_digest.data(), p + 32, 32);
  if (ds.n < 1 || ds.n > kMaxQubits) throw bad("qubit count out of range");
  const std::size_t rb = record_bytes(ds.n);
  if (N == 0 || (bytes.size() - kHeaderSize) / rb != N || (bytes.size() - kHeaderSize) % rb != 0) throw bad("record count does not match size");
  ds.resize(N);
  const std::size_t n = static_cast<std::size_t>(ds.n);
  const std::uint8_t* rec = bytes.data() + kHeaderSize;
  for (std::uint64_t l = 0; l < N; ++l, rec += rb) {
    for (std::size_t q = 0; q < n; ++q) {
      const unsigned label = get_bits(rec, 3 * q, 3);
      const unsigned basis = get_bits(rec, 3 * n + 2 * q, 2);
      if (label > 5 || basis > 2) throw bad("invalid record " + std::to_string(l));
      ds.labels[l * n + q] = static_cast<std::uint8_t>(label);
      ds.bases[l * n + q] = static_cast<std::uint8_t>(basis);
      if (get_bits(rec, 5 * n + q, 1)) ds.outcomes[l] |= std::uint64_t{1} << q;
    }
  }
  return ds;
}

void write_dataset(const std::string& path, const Dataset& ds) {
  const auto bytes = encode_dataset(ds);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot write dataset");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError(path, "short write");
}

Dataset read_dataset(const std::string& path) {
  if (!std::filesystem::exists(path)) throw IoError(path, "dataset file not found");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open dataset");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_dataset(bytes, path);
}

}  // namespace hamlearn
