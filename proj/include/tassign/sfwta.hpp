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
#include <string>
#include <vector>

#include "tassign/cost_model.hpp"
#include "tassign/network.hpp"
#include "tassign/noise.hpp"
#include "tassign/rng.hpp"
#include "tassign/trace.hpp"

namespace tassign {

/// Power-law step schedule for the stochastic solver:
///   rho_t   = rho0   * (t + t_offset)^(-p_rho)     (gradient averaging)
///   gamma_t = gamma0 * (t + t_offset)^(-p_gamma)   (flow step)
///
/// Convergence requires (i) sum rho_t = inf, (ii) sum rho_t^2 < inf,
/// (iii) sum gamma_t = inf, (iv) sum gamma_t^2 / rho_t < inf, which for this
/// family means 1/2 < p_rho <= 1, p_gamma <= 1 and 2 p_gamma - p_rho > 1.
/// The defaults rho_t = (t+8)^(-2/3), gamma_t = 2 (t+8)^(-1) satisfy all four
/// and keep both steps within (0, 1] from t = 0.
struct StepSchedule {
  double rho0 = 1.0;
  double p_rho = 2.0 / 3.0;
  double gamma0 = 2.0;
  double p_gamma = 1.0;
  double t_offset = 8.0;

  double rho(std::int64_t t) const;
  double gamma(std::int64_t t) const;
};

struct ScheduleCheck {
  bool pass = true;
  std::vector<std::string> violations;  // names each failed condition
};

/// Checks the four summability conditions plus positivity and the (0, 1]
/// range of both steps at t = 0. Diagnostic return; never throws.
ScheduleCheck validate_schedule(const StepSchedule& schedule);

/// Mutable state of one stochastic solve: iteration counter, feasible flow
/// iterate x, and the averaged gradient tracker d (finite, elementwise >= 0).
struct SfwtaState {
  std::int64_t t = 0;
  FlowVector x;
  GradientVector d;
  std::size_t clamp_count = 0;  // additive-noise flow clamps so far
};

/// Feasible starting state: x is the all-or-nothing assignment at zero-flow
/// costs, d is the zero vector.
SfwtaState sfwta_init(const Network& net, const CostParams& params);

/// One iteration of the online stochastic solve:
///   sample z; f = x + z; c' = stochastic gradient at (x, z);
///   d <- (1 - rho_t) d + rho_t c';
///   y <- all-or-nothing under costs d;
///   x <- (1 - gamma_{t+1}) x + gamma_{t+1} y.
/// The record carries the sampled cost of f and the gradient-tracking error
/// ||grad F(x_t) - d_t||^2 against the closed-form expected gradient.
/// Preconditions (valid state, validated schedule) are the caller's.
IterationRecord sfwta_step(SfwtaState& state, const Network& net,
                           const CostParams& params, const NoiseModel& noise,
                           const StepSchedule& schedule, Rng& gen);

struct SfwtaStop {
  std::int64_t max_iters = 100000;
  double rel_change_tol = 1e-6;
  // Consecutive sub-threshold iterations required before stopping; single
  // quiet iterations are common in the stochastic trace.
  int patience = 50;
};

struct SfwtaResult {
  FlowVector flows;  // last iterate (snapshots allow external averaging)
  SolverTrace trace;
  bool converged = false;
  std::int64_t iterations = 0;
  std::size_t clamp_count = 0;
};

/// Runs sfwta_step until the max relative flow change stays below
/// stop.rel_change_tol for stop.patience consecutive iterations, or
/// stop.max_iters is reached. The generator is seeded from noise.seed;
/// identical inputs give bit-identical traces. Throws ValidationError when
/// the schedule fails validate_schedule.
SfwtaResult solve_sfwta(const Network& net, const CostParams& params,
                        const NoiseModel& noise, const StepSchedule& schedule,
                        const SfwtaStop& stop, TraceSink* sink = nullptr,
                        std::int64_t snapshot_every = 100);

/// Trajectory summary of the gradient-tracking error over disjoint windows.
struct TrackingErrorSummary {
  double first_window_mean = 0.0;
  double final_window_mean = 0.0;
  double decreasing_fraction = 0.0;  // adjacent window pairs that decrease
  int window = 0;
};

/// Windowed view of the tracking-error column of a stochastic trace. Throws
/// ValidationError when the trace has no tracking data (e.g. a
/// Frank-Wolfe trace) or spans fewer than two windows.
TrackingErrorSummary tracking_error_diagnostic(const SolverTrace& trace,
                                               int window = 100);

}  // namespace tassign
