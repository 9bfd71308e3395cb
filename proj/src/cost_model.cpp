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

#include "tassign/cost_model.hpp"

#include <cmath>

namespace tassign {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ValidationError(std::string(what) + ": dimension mismatch");
  }
}

inline double quart(double v) {
  double sq = v * v;
  return sq * sq;
}

}  // namespace

CostVector link_cost(const FlowVector& f, const CostParams& params) {
  require_dim(f.size(), params.a.size(), "link_cost");
  require_dim(params.b.size(), params.a.size(), "link_cost");
  CostVector out(f.size());
  for (std::size_t e = 0; e < f.size(); ++e) {
    out[e] = params.a[e] + params.b[e] * quart(f[e]);
  }
  return out;
}

double social_cost(const FlowVector& f, const CostParams& params) {
  require_dim(f.size(), params.a.size(), "social_cost");
  double total = 0.0;
  for (std::size_t e = 0; e < f.size(); ++e) {
    total += f[e] * (params.a[e] + params.b[e] * quart(f[e]));
  }
  return total;
}

GradientVector stochastic_gradient_case1(const FlowVector& x,
                                         const std::vector<double>& u,
                                         double beta,
                                         const CostParams& params) {
  require_dim(x.size(), params.a.size(), "stochastic_gradient_case1");
  require_dim(u.size(), x.size(), "stochastic_gradient_case1");
  if (beta < 0.0 || beta > 1.0) {
    throw ValidationError("spread beta must lie in [0, 1]");
  }
  GradientVector g(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    if (u[e] < -1.0 || u[e] > 1.0) {
      throw ValidationError("noise variate u out of [-1, 1]");
    }
    const double s = 1.0 + beta * u[e];
    const double s4 = quart(s);
    g[e] = params.a[e] * s + 5.0 * params.b[e] * quart(x[e]) * s4 * s;
  }
  return g;
}

GradientVector stochastic_gradient_case2(const FlowVector& x,
                                         const std::vector<double>& z,
                                         const CostParams& params,
                                         std::size_t* clamp_count) {
  require_dim(x.size(), params.a.size(), "stochastic_gradient_case2");
  require_dim(z.size(), x.size(), "stochastic_gradient_case2");
  GradientVector g(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    double f = x[e] + z[e];
    if (f < 0.0) {
      f = 0.0;
      if (clamp_count) ++*clamp_count;
    }
    g[e] = params.a[e] + 5.0 * params.b[e] * quart(f);
  }
  return g;
}

double quintic_mean_factor(double beta) {
  if (beta < 1e-8) return 1.0;  // series limit, avoids 0/0
  const double p = 1.0 + beta;
  const double q = 1.0 - beta;
  const double p3 = p * p * p;
  const double q3 = q * q * q;
  return (p3 * p3 - q3 * q3) / (12.0 * beta);
}

GradientVector expected_gradient_case1(const FlowVector& x, double beta,
                                       const CostParams& params) {
  require_dim(x.size(), params.a.size(), "expected_gradient_case1");
  if (beta < 0.0 || beta > 1.0) {
    throw ValidationError("spread beta must lie in [0, 1]");
  }
  const double m5 = quintic_mean_factor(beta);
  GradientVector g(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    g[e] = params.a[e] + 5.0 * params.b[e] * quart(x[e]) * m5;
  }
  return g;
}

GradientVector expected_gradient_case2(const FlowVector& x,
                                       const NoiseMoments& moments,
                                       const CostParams& params) {
  require_dim(x.size(), params.a.size(), "expected_gradient_case2");
  if (moments.m2.size() != x.size() || moments.m3.size() != x.size() ||
      moments.m4.size() != x.size()) {
    throw ValidationError("expected_gradient_case2: missing noise moments");
  }
  GradientVector g(x.size());
  for (std::size_t e = 0; e < x.size(); ++e) {
    const double xe = x[e];
    // sum_{i=0..4} C(4,i) x^i E[z^{4-i}], with E[z] = 0 killing the i=3 term
    const double poly = quart(xe) + 4.0 * xe * moments.m3[e] +
                        6.0 * xe * xe * moments.m2[e] + moments.m4[e];
    g[e] = params.a[e] + 5.0 * params.b[e] * poly;
  }
  return g;
}

double expected_social_cost_case1(const FlowVector& x, double beta,
                                  const CostParams& params) {
  require_dim(x.size(), params.a.size(), "expected_social_cost_case1");
  const double m5 = quintic_mean_factor(beta);
  double total = 0.0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    total += params.a[e] * x[e] + params.b[e] * quart(x[e]) * x[e] * m5;
  }
  return total;
}

double uniform_flow_moment(double x_e, double beta, int r) {
  if (r < 1) throw ValidationError("moment order r must be >= 1");
  if (beta < 1e-8) return std::pow(x_e, r);
  const double p = std::pow(1.0 + beta, r + 1);
  const double q = std::pow(1.0 - beta, r + 1);
  return std::pow(x_e, r) * (p - q) / (2.0 * beta * (r + 1));
}

double variance_of_f4(double x_e) {
  return (16.0 / 225.0) * std::pow(2.0 * x_e, 8);
}

double lipschitz_bound(const Network& net, const CostParams& params,
                       double beta, std::size_t path_cap) {
  if (beta < 0.0 || beta > 1.0) {
    throw ValidationError("spread beta must lie in [0, 1]");
  }
  require_dim(params.b.size(), net.edges.size(), "lipschitz_bound");
  const std::vector<double> k = edge_flow_bounds(net, path_cap);
  // |g_e| = |E[5 b (x+y+2z)((x+z)^2 + (y+z)^2)]| is maximized over the
  // feasible box at x = y = K_e, z = beta K_e, giving 20 b K^3 (1+beta)^3.
  const double s = 1.0 + beta;
  double sum_sq = 0.0;
  for (std::size_t e = 0; e < k.size(); ++e) {
    const double ge = 20.0 * params.b[e] * k[e] * k[e] * k[e] * s * s * s;
    sum_sq += ge * ge;
  }
  return std::sqrt(sum_sq);
}

}  // namespace tassign
