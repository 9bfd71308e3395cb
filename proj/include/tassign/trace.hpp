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
#include <utility>
#include <vector>

#include "tassign/network.hpp"

namespace tassign {

/// One solver iteration. `cost` is the deterministic objective for the
/// Frank-Wolfe solvers and the sampled cost of f = x + z for the stochastic
/// solver. `tracking_error` is ||grad F(x_t) - d_t||^2 when a closed-form
/// expected gradient exists, NaN otherwise.
struct IterationRecord {
  std::int64_t iteration = 0;
  double max_rel_change = 0.0;
  double cost = 0.0;
  double tracking_error = 0.0;
};

/// Receives each iteration's record together with the updated flow vector.
/// Solvers feed exactly one producer at a time into a sink.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_iteration(const IterationRecord& record,
                            const FlowVector& x) = 0;
};

/// Default sink: keeps all scalar records, plus flow snapshots every
/// `snapshot_every` iterations (and the final iterate) so long runs stay
/// within memory.
struct SolverTrace {
  std::vector<IterationRecord> records;
  std::vector<std::pair<std::int64_t, FlowVector>> snapshots;
  std::int64_t snapshot_every = 100;

  void add(const IterationRecord& record, const FlowVector& x) {
    records.push_back(record);
    if (snapshot_every > 0 && record.iteration % snapshot_every == 0) {
      snapshots.emplace_back(record.iteration, x);
    }
  }

  void snapshot_final(const FlowVector& x) {
    const std::int64_t t = records.empty() ? 0 : records.back().iteration;
    if (snapshots.empty() || snapshots.back().first != t) {
      snapshots.emplace_back(t, x);
    }
  }
};

}  // namespace tassign
