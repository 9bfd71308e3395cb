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

#include "tassign/sfwta.hpp"

#include <cmath>

#include "tassign/shortest_path.hpp"

namespace tassign {

double StepSchedule::rho(std::int64_t t) const {
  return rho0 * std::pow(static_cast<double>(t) + t_offset, -p_rho);
}

double StepSchedule::gamma(std::int64_t t) const {
  return gamma0 * std::pow(static_cast<double>(t) + t_offset, -p_gamma);
}

ScheduleCheck validate_schedule(const StepSchedule& s) {
  ScheduleCheck check;
  auto fail = [&](const std::string& why) {
    check.pass = false;
    check.violations.push_back(why);
  };
  if (s.rho0 <= 0.0) fail("rho0 must be positive");
  if (s.gamma0 <= 0.0) fail("gamma0 must be positive");
  if (s.t_offset < 1.0) fail("t_offset must be >= 1");
  if (s.p_rho > 1.0) {
    fail("condition (i): sum rho_t diverges only for p_rho <= 1");
  }
  if (s.p_rho <= 0.5) {
    fail("condition (ii): sum rho_t^2 converges only for p_rho > 1/2");
  }
  if (s.p_gamma > 1.0) {
    fail("condition (iii): sum gamma_t diverges only for p_gamma <= 1");
  }
  if (2.0 * s.p_gamma - s.p_rho <= 1.0) {
    fail("condition (iv): sum gamma_t^2 / rho_t converges only for "
         "2 p_gamma - p_rho > 1");
  }
  if (check.pass) {
    if (s.rho(0) > 1.0) fail("rho_0 exceeds 1");
    if (s.gamma(0) > 1.0) fail("gamma_0 exceeds 1");
  }
  return check;
}

SfwtaState sfwta_init(const Network& net, const CostParams& params) {
  SfwtaState state;
  state.x = all_or_nothing(net, params.a).flow;
  state.d.assign(net.edge_count(), 0.0);
  return state;
}

namespace {

inline double quart(double v) {
  const double sq = v * v;
  return sq * sq;
}

// ||grad F(x) - d||^2 with the closed-form expected gradient of the given
// noise model.
double tracking_error(const FlowVector& x, const GradientVector& d,
                      const CostParams& params, const NoiseModel& noise) {
  double err = 0.0;
  if (noise.kind == NoiseModel::Kind::MultiplicativeUniform) {
    const double m5 = quintic_mean_factor(noise.beta);
    for (std::size_t e = 0; e < x.size(); ++e) {
      const double g = params.a[e] + 5.0 * params.b[e] * quart(x[e]) * m5;
      err += (g - d[e]) * (g - d[e]);
    }
  } else {
    const NoiseMoments moments = noise.moments(static_cast<int>(x.size()));
    for (std::size_t e = 0; e < x.size(); ++e) {
      const double xe = x[e];
      const double poly = quart(xe) + 4.0 * xe * moments.m3[e] +
                          6.0 * xe * xe * moments.m2[e] + moments.m4[e];
      const double g = params.a[e] + 5.0 * params.b[e] * poly;
      err += (g - d[e]) * (g - d[e]);
    }
  }
  return err;
}

}  // namespace

IterationRecord sfwta_step(SfwtaState& state, const Network& net,
                           const CostParams& params, const NoiseModel& noise,
                           const StepSchedule& schedule, Rng& gen) {
  const std::int64_t t = state.t;
  const double rho = schedule.rho(t);
  const double gamma = schedule.gamma(t + 1);

  static thread_local std::vector<double> z, u, f;
  sample_noise_into(state.x, noise, gen, z, u);

  // Sampled cost of the realized flow f = x + z (clamped at zero so the cost
  // is evaluated on physical flows).
  f.resize(state.x.size());
  double sampled_cost = 0.0;
  for (std::size_t e = 0; e < state.x.size(); ++e) {
    f[e] = std::max(state.x[e] + z[e], 0.0);
    sampled_cost += f[e] * (params.a[e] + params.b[e] * quart(f[e]));
  }

  const GradientVector sample =
      noise.kind == NoiseModel::Kind::MultiplicativeUniform
          ? stochastic_gradient_case1(state.x, u, noise.beta, params)
          : stochastic_gradient_case2(state.x, z, params, &state.clamp_count);
  for (std::size_t e = 0; e < state.d.size(); ++e) {
    state.d[e] = (1.0 - rho) * state.d[e] + rho * sample[e];
  }

  IterationRecord rec;
  rec.iteration = t;
  rec.cost = sampled_cost;
  rec.tracking_error = tracking_error(state.x, state.d, params, noise);

  const FlowVector y = all_or_nothing(net, state.d).flow;
  FlowVector x_next(state.x.size());
  for (std::size_t e = 0; e < state.x.size(); ++e) {
    x_next[e] = (1.0 - gamma) * state.x[e] + gamma * y[e];
  }
  rec.max_rel_change = max_relative_change(state.x, x_next);
  state.x = std::move(x_next);
  state.t = t + 1;
  return rec;
}

SfwtaResult solve_sfwta(const Network& net, const CostParams& params,
                        const NoiseModel& noise, const StepSchedule& schedule,
                        const SfwtaStop& stop, TraceSink* sink,
                        std::int64_t snapshot_every) {
  const ScheduleCheck check = validate_schedule(schedule);
  if (!check.pass) {
    std::string what = "invalid step schedule:";
    for (const std::string& v : check.violations) what += " " + v + ";";
    throw ValidationError(what);
  }
  noise.validate(net.edge_count());
  if (stop.max_iters < 1) throw ValidationError("max_iters must be >= 1");

  Rng gen(noise.seed);
  SfwtaState state = sfwta_init(net, params);

  SfwtaResult result;
  result.trace.snapshot_every = snapshot_every;
  int quiet_streak = 0;
  for (std::int64_t t = 0; t < stop.max_iters; ++t) {
    const IterationRecord rec =
        sfwta_step(state, net, params, noise, schedule, gen);
    result.trace.add(rec, state.x);
    if (sink) sink->on_iteration(rec, state.x);
    result.iterations = t + 1;

    if (rec.max_rel_change < stop.rel_change_tol) {
      if (++quiet_streak >= stop.patience) {
        result.converged = true;
        break;
      }
    } else {
      quiet_streak = 0;
    }
  }

  result.trace.snapshot_final(state.x);
  result.flows = std::move(state.x);
  result.clamp_count = state.clamp_count;
  return result;
}

TrackingErrorSummary tracking_error_diagnostic(const SolverTrace& trace, int window) {
  if (window < 1) throw ValidationError("window must be >= 1");
  std::vector<double> means;
  double acc = 0.0;
  int in_window = 0;
  for (const IterationRecord& rec : trace.records) {
    if (std::isnan(rec.tracking_error)) {
      throw ValidationError("trace lacks gradient-tracking data");
    }
    acc += rec.tracking_error;
    if (++in_window == window) {
      means.push_back(acc / window);
      acc = 0.0;
      in_window = 0;
    }
  }
  if (means.size() < 2) {
    throw ValidationError("trace too short for the requested window");
  }
  TrackingErrorSummary summary;
  summary.window = window;
  summary.first_window_mean = means.front();
  summary.final_window_mean = means.back();
  int decreasing = 0;
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i] < means[i - 1]) ++decreasing;
  }
  summary.decreasing_fraction =
      static_cast<double>(decreasing) / static_cast<double>(means.size() - 1);
  return summary;
}

}  // namespace tassign
