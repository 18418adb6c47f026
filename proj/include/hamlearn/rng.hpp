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

namespace hamlearn {

/// Counter-based generator: output k of stream (seed, s) is splitmix64(key + k * golden)
/// with key = splitmix64(splitmix64(seed) ^ (s * kStreamMul)). Streams are independent of
/// evaluation order, so record l always draws from stream l regardless of threading.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamMul = 0xd1342543de82ef95ULL;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [0, bound) by multiply-shift with rejection.
  std::uint64_t bounded(std::uint64_t bound);
  /// Standard normal via Box-Muller (one value per call).
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Named substreams used across the pipeline; record-level streams are offset by these tags.
enum class StreamTag : std::uint64_t {
  Records = 0,
  Panel = 1ULL << 40,
  MonteCarlo = 2ULL << 40,
  Classifier = 3ULL << 40,
  TraceStates = 4ULL << 40,
  Plans = 5ULL << 40,
};

inline CounterRng substream(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
  return CounterRng(seed, static_cast<std::uint64_t>(tag) + index);
}

}  // namespace hamlearn
