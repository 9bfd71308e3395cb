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

#include <cstddef>
#include <vector>

#include "tassign/network.hpp"

namespace tassign {

/// Per-edge gradient values (cost units per flow unit). Also the type of the
/// running gradient tracker in the stochastic solver.
using GradientVector = std::vector<double>;

// The link cost is c_e(f) = a_e + b_e f^4, so the total (social) cost is
// sum_e f_e c_e(f_e). Under multiplicative noise the realized flow is
// f_e = x_e (1 + beta u_e) with u_e uniform on [-1, 1]; under additive noise
// f_e = x_e + z_e with z_e independent of x_e and zero-mean.

/// c_e(f_e) = a_e + b_e f_e^4 per edge.
CostVector link_cost(const FlowVector& f, const CostParams& params);

/// sum_e f_e (a_e + b_e f_e^4).
double social_cost(const FlowVector& f, const CostParams& params);

/// Gradient sample under multiplicative noise:
/// a_e (1 + beta u_e) + 5 b_e x_e^4 (1 + beta u_e)^5. Requires |u_e| <= 1 and
/// 0 <= beta <= 1.
GradientVector stochastic_gradient_case1(const FlowVector& x,
                                         const std::vector<double>& u,
                                         double beta, const CostParams& params);

/// Gradient sample under additive noise independent of x:
/// a_e + 5 b_e (x_e + z_e)^4. Flows x_e + z_e below zero are clamped to zero
/// before evaluation; when clamp_count is non-null it is incremented once per
/// clamped edge so callers can spot a misconfigured noise model.
GradientVector stochastic_gradient_case2(const FlowVector& x,
                                         const std::vector<double>& z,
                                         const CostParams& params,
                                         std::size_t* clamp_count = nullptr);

/// E[(1 + beta u)^5] for u uniform on [-1, 1]:
/// ((1+beta)^6 - (1-beta)^6) / (12 beta), with the series limit 1 at
/// beta < 1e-8. Equals 16/3 at beta = 1 and 1 at beta = 0.
double quintic_mean_factor(double beta);

/// Expected gradient under multiplicative noise:
/// a_e + 5 b_e x_e^4 * quintic_mean_factor(beta).
GradientVector expected_gradient_case1(const FlowVector& x, double beta,
                                       const CostParams& params);

/// Raw noise moments E[z^k], k = 2..4, per edge (E[z] = 0 by model).
struct NoiseMoments {
  std::vector<double> m2;
  std::vector<double> m3;
  std::vector<double> m4;
};

/// Expected gradient under additive noise via the binomial expansion
/// a_e + 5 b_e sum_{i=0..4} C(4,i) x_e^i E[z_e^{4-i}].
GradientVector expected_gradient_case2(const FlowVector& x,
                                       const NoiseMoments& moments,
                                       const CostParams& params);

/// Closed-form expected total cost under multiplicative noise:
/// sum_e [a_e x_e + b_e x_e^5 * quintic_mean_factor(beta)].
/// Reduces to social_cost(x) at beta = 0.
double expected_social_cost_case1(const FlowVector& x, double beta,
                                  const CostParams& params);

/// r-th moment of f = x (1 + beta u), u uniform on [-1, 1]:
/// x^r ((1+beta)^{r+1} - (1-beta)^{r+1}) / (2 beta (r+1)).
/// At beta = 1 this is (2x)^r / (r+1).
double uniform_flow_moment(double x_e, double beta, int r);

/// Var[f^4] at beta = 1: (16/225) (2 x_e)^8. Other spreads compose
/// uniform_flow_moment(x, beta, 8) - uniform_flow_moment(x, beta, 4)^2.
double variance_of_f4(double x_e);

/// Upper bound L on ||grad F(x) - grad F(y)|| / ||x - y|| over the feasible
/// set, from the per-edge bound 20 b_e K_e^3 (1+beta)^3 with K_e the maximum
/// feasible flow on edge e (edge_flow_bounds). The beta < 1 case extends the
/// beta = 1 derivation by scaling the noise bound |z_e| <= beta x_e.
double lipschitz_bound(const Network& net, const CostParams& params,
                       double beta, std::size_t path_cap = 10000);

}  // namespace tassign
