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

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "tassign/rng.hpp"

namespace tassign {

/// Which implementation of a data-parallel kernel to run. Serial is the
/// reference the tests compare against; Parallel uses OpenMP when compiled
/// in and falls back to the serial path otherwise.
enum class Execution { Serial, Parallel };

struct McEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double std_error = 0.0;
  std::uint64_t n = 0;
};

namespace detail {

inline constexpr std::uint64_t kMcChunk = 1 << 16;

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Partial sums of one chunk. Chunk c covers samples [c*kMcChunk, ...) and
// owns an independent generator, so the partition is fixed regardless of
// thread count and the combined result is identical for both executions.
template <typename SampleFn>
ChunkSums mc_chunk(std::uint64_t master_seed, std::uint64_t chunk,
                   std::uint64_t count, SampleFn& sample) {
  Rng gen(derive_seed(master_seed, chunk));
  ChunkSums s;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double v = sample(gen);
    s.sum += v;
    s.sum_sq += v * v;
  }
  return s;
}

}  // namespace detail

/// Mean / variance / standard error of `sample` over n i.i.d. draws.
/// The stream is split into fixed-size chunks with derived seeds; partials
/// are combined in chunk order, so Serial and Parallel agree bit-for-bit.
template <typename SampleFn>
McEstimate mc_estimate(std::uint64_t n, std::uint64_t master_seed,
                       SampleFn sample, Execution exec = Execution::Parallel) {
  McEstimate out;
  out.n = n;
  if (n == 0) return out;

  const std::uint64_t chunks = (n + detail::kMcChunk - 1) / detail::kMcChunk;
  std::vector<detail::ChunkSums> partial(chunks);

  auto chunk_count = [&](std::uint64_t c) {
    return std::min(detail::kMcChunk, n - c * detail::kMcChunk);
  };

  if (exec == Execution::Parallel) {
    // Chunk c's partial sums do not depend on which thread computes them,
    // so dynamic scheduling changes nothing but the load balance.
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      partial[c] = detail::mc_chunk(master_seed, c, chunk_count(c), sample);
    }
  } else {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      partial[c] = detail::mc_chunk(master_seed, c, chunk_count(c), sample);
    }
  }

  detail::ChunkSums total;
  for (const auto& p : partial) {  // fixed combining order
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }

  const double nd = static_cast<double>(n);
  out.mean = total.sum / nd;
  if (n > 1) {
    out.variance =
        std::max(0.0, (total.sum_sq - nd * out.mean * out.mean) / (nd - 1.0));
    out.std_error = std::sqrt(out.variance / nd);
  }
  return out;
}

}  // namespace tassign
