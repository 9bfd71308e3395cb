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

#include "tassign/cost_model.hpp"
#include "tassign/network.hpp"
#include "tassign/trace.hpp"

namespace tassign {

struct FwConfig {
  std::int64_t max_iters = 10000;
  double rel_change_tol = 1e-6;
  double line_search_tol = 1e-12;  // on the step parameter gamma
  double gap_rel_tol = 1e-8;       // stop when gap <= gap_rel_tol * objective
  std::int64_t snapshot_every = 100;
};

/// Which objective the solver (and the line search) minimizes along the
/// segment: the deterministic total cost, or its closed-form expectation
/// under multiplicative noise with spread beta.
enum class SegmentObjective { Deterministic, ExpectedCase1 };

/// Minimizer of the chosen objective along x + gamma (y - x), gamma in
/// [0, 1], by bisection on the derivative (the segment objective is a convex
/// degree-5 polynomial). Returns 0 or 1 when the minimum sits at an endpoint.
double line_search(const FlowVector& x, const FlowVector& y,
                   const CostParams& params, SegmentObjective objective,
                   double beta, double tol);

struct FwResult {
  FlowVector flows;
  SolverTrace trace;
  bool converged = false;  // false when the iteration budget ran out
  std::int64_t iterations = 0;
  double objective = 0.0;
  double duality_gap = 0.0;  // grad(x*) . (x* - y*) at the final iterate
};

/// Frank-Wolfe with exact line search on the deterministic social cost.
/// Initialization is the all-or-nothing assignment at zero-flow costs.
/// Stops when the max relative flow change drops below rel_change_tol or the
/// duality gap certifies near-optimality, whichever happens first.
FwResult solve_deterministic(const Network& net, const CostParams& params,
                             const FwConfig& config = {},
                             TraceSink* sink = nullptr);

/// Same loop on the closed-form expected objective under multiplicative
/// noise with spread beta; at beta = 0 it coincides with solve_deterministic.
/// Serves as the deterministic surrogate / reference optimum for the
/// stochastic solver.
FwResult solve_expected(const Network& net, const CostParams& params,
                        double beta, const FwConfig& config = {},
                        TraceSink* sink = nullptr);

}  // namespace tassign
