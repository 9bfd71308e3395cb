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

#include "tassign/fw_solver.hpp"

#include <cmath>
#include <limits>

#include "tassign/shortest_path.hpp"

namespace tassign {

namespace {

inline double quart(double v) {
  const double sq = v * v;
  return sq * sq;
}

// d/dgamma of the segment objective at x + gamma v:
// sum_e v_e (a_e + 5 b_e m5 (x_e + gamma v_e)^4).
double segment_derivative(const FlowVector& x, const FlowVector& v,
                          const CostParams& params, double m5, double gamma) {
  double d = 0.0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    const double f = x[e] + gamma * v[e];
    d += v[e] * (params.a[e] + 5.0 * params.b[e] * m5 * quart(f));
  }
  return d;
}

}  // namespace

double line_search(const FlowVector& x, const FlowVector& y,
                   const CostParams& params, SegmentObjective objective,
                   double beta, double tol) {
  if (x.size() != y.size() || x.size() != params.a.size()) {
    throw ValidationError("line_search: dimension mismatch");
  }
  const double m5 = objective == SegmentObjective::Deterministic
                        ? 1.0
                        : quintic_mean_factor(beta);
  FlowVector v(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) v[e] = y[e] - x[e];

  // The derivative is nondecreasing in gamma, so the minimum is at an
  // endpoint unless the sign changes inside (0, 1).
  if (segment_derivative(x, v, params, m5, 0.0) >= 0.0) return 0.0;
  if (segment_derivative(x, v, params, m5, 1.0) <= 0.0) return 1.0;

  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 50 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (segment_derivative(x, v, params, m5, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

FwResult solve_fw(const Network& net, const CostParams& params,
                  SegmentObjective objective, double beta,
                  const FwConfig& config, TraceSink* sink) {
  if (config.max_iters < 1) throw ValidationError("max_iters must be >= 1");
  if (config.rel_change_tol <= 0.0 || config.line_search_tol <= 0.0) {
    throw ValidationError("tolerances must be positive");
  }
  const double m5 = objective == SegmentObjective::Deterministic
                        ? 1.0
                        : quintic_mean_factor(beta);
  auto objective_value = [&](const FlowVector& f) {
    double total = 0.0;
    for (std::size_t e = 0; e < f.size(); ++e) {
      total += params.a[e] * f[e] + params.b[e] * quart(f[e]) * f[e] * m5;
    }
    return total;
  };

  FwResult result;
  result.trace.snapshot_every = config.snapshot_every;

  // Zero-flow costs are just the a coefficients.
  FlowVector x = all_or_nothing(net, params.a).flow;
  result.objective = objective_value(x);

  GradientVector grad(x.size());
  for (std::int64_t t = 0; t < config.max_iters; ++t) {
    for (std::size_t e = 0; e < x.size(); ++e) {
      grad[e] = params.a[e] + 5.0 * params.b[e] * m5 * quart(x[e]);
    }
    const FlowVector y = all_or_nothing(net, grad).flow;

    double gap = 0.0;
    for (std::size_t e = 0; e < x.size(); ++e) gap += grad[e] * (x[e] - y[e]);
    result.duality_gap = gap;
    if (gap <= config.gap_rel_tol * result.objective) {
      result.converged = true;
      break;
    }

    const double gamma =
        line_search(x, y, params, objective, beta, config.line_search_tol);
    FlowVector x_next(x.size());
    for (std::size_t e = 0; e < x.size(); ++e) {
      x_next[e] = x[e] + gamma * (y[e] - x[e]);
    }

    IterationRecord rec;
    rec.iteration = t;
    rec.max_rel_change = max_relative_change(x, x_next);
    rec.cost = objective_value(x_next);
    rec.tracking_error = std::numeric_limits<double>::quiet_NaN();
    x = std::move(x_next);
    result.objective = rec.cost;
    result.iterations = t + 1;
    result.trace.add(rec, x);
    if (sink) sink->on_iteration(rec, x);

    if (rec.max_rel_change < config.rel_change_tol) {
      result.converged = true;
      break;
    }
  }

  // Gap certificate at the returned iterate (the loop's value can be stale
  // when the stop was triggered by the relative-change rule).
  for (std::size_t e = 0; e < x.size(); ++e) {
    grad[e] = params.a[e] + 5.0 * params.b[e] * m5 * quart(x[e]);
  }
  const FlowVector y_final = all_or_nothing(net, grad).flow;
  result.duality_gap = 0.0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    result.duality_gap += grad[e] * (x[e] - y_final[e]);
  }

  result.trace.snapshot_final(x);
  result.flows = std::move(x);
  return result;
}

}  // namespace

FwResult solve_deterministic(const Network& net, const CostParams& params,
                             const FwConfig& config, TraceSink* sink) {
  return solve_fw(net, params, SegmentObjective::Deterministic, 0.0, config,
                  sink);
}

FwResult solve_expected(const Network& net, const CostParams& params,
                        double beta, const FwConfig& config, TraceSink* sink) {
  if (beta < 0.0 || beta > 1.0) {
    throw ValidationError("spread beta must lie in [0, 1]");
  }
  return solve_fw(net, params, SegmentObjective::ExpectedCase1, beta, config,
                  sink);
}

}  // namespace tassign
