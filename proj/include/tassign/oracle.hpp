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
#include <vector>

#include "tassign/mc.hpp"
#include "tassign/network.hpp"
#include "tassign/noise.hpp"
#include "tassign/rng.hpp"

// Brute-force verification tools, deliberately independent of the solver and
// cost-model code paths: objectives are re-derived here from path flows, and
// expected quantities use Gauss-Legendre quadrature over the noise variate
// instead of the closed-form algebra the solvers rely on. Desk scale only.

namespace tassign::oracle {

/// The assignment problem restated over enumerated simple paths: per OD pair
/// a scaled simplex of path flows (nonnegative, summing to the demand).
struct PathSpaceProblem {
  enum class Objective { Deterministic, ExpectedCase1 };

  struct OdPaths {
    int origin = -1;
    int dest = -1;
    double demand = 0.0;
    std::vector<std::vector<int>> paths;  // edge-index lists
  };

  const Network* net = nullptr;
  std::vector<OdPaths> od;
  Objective objective = Objective::Deterministic;
  double beta = 0.0;
};

PathSpaceProblem build_path_space_problem(
    const Network& net, PathSpaceProblem::Objective objective, double beta,
    std::size_t path_cap = 10000);

/// Objective of a path-flow point, evaluated from scratch (edge accumulation
/// plus either the plain total cost or the quadrature expectation).
double path_space_cost(const PathSpaceProblem& problem,
                       const std::vector<std::vector<double>>& path_flows);

struct GridResult {
  std::vector<std::vector<double>> path_flows;  // per OD pair, per path
  double objective = 0.0;
  FlowVector edge_flows;
};

/// Exhaustive scan of the product-of-simplices grid with `resolution`
/// intervals per free dimension, followed by three local refinement rounds
/// that shrink the spacing tenfold each. Ties resolve to the lower
/// lexicographic grid index, so Serial and Parallel agree exactly.
/// Throws when the problem has more than 6 free dimensions or the grid
/// exceeds the point cap.
GridResult grid_minimize(const PathSpaceProblem& problem, int resolution,
                         Execution exec = Execution::Parallel,
                         std::uint64_t point_cap = 20000000);

/// Empirical mean (and standard error) of the total cost of x + z over n
/// i.i.d. noise draws. Chunked like mc_estimate; `gen` supplies the master
/// seed and is advanced.
McEstimate monte_carlo_expected_cost(const FlowVector& x,
                                     const CostParams& params,
                                     const NoiseModel& noise, std::uint64_t n,
                                     Rng& gen,
                                     Execution exec = Execution::Parallel);

/// For a two-path single-OD network: |expected marginal path cost of path 1
/// - path 2| at flows x under multiplicative noise with spread beta, with
/// the expectation taken by quadrature. Small residual certifies first-order
/// stationarity. Throws ValidationError on any other topology.
double stationarity_residual(const FlowVector& x, const Network& net,
                             double beta);

}  // namespace tassign::oracle
