// Copyright 2026 The tassign Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace tassign {

/// Seeded pseudorandom generator with a platform-independent bit stream.
///
/// The engine is std::mt19937_64, whose output sequence for a given seed is
/// fixed by the C++ standard, so runs reproduce bit-for-bit across platforms
/// and compilers. Floating-point variates are derived from the high bits of
/// the raw output by a fixed affine rule, never through std::*_distribution
/// (whose streams are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1, 1): 2 * next_unit() - 1.
  double next_pm1() { return 2.0 * next_unit() - 1.0; }

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer. Used to spread seed material.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for an independent sub-stream: master seed XOR stream index, hashed.
/// Concurrent runs (replications, Monte Carlo chunks) each get their own
/// generator seeded this way, so results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ index);
}

}  // namespace tassign
