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

#include <cmath>

#include "doctest.h"
#include "tassign/cost_model.hpp"
#include "tassign/mc.hpp"
#include "test_helpers.hpp"

using namespace tassign;
using namespace tassign::testing;

namespace {

const CostParams kFig1Params = {{0.3, 0.3, 0.5, 0.5}, {0.6, 0.6, 0.1, 0.1}};
const CostParams kSingleEdge = {{0.3}, {0.6}};

}  // namespace

TEST_CASE("link_cost evaluates a + b f^4") {
  CHECK(link_cost({1.0}, kSingleEdge)[0] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(link_cost({0.0}, kSingleEdge)[0] == 0.3);

  const CostVector c =
      link_cost({0.5238, 0.5238, 0.4762, 0.4762}, kFig1Params);
  CHECK(std::abs(c[0] - 0.34517) <= 1e-5);
  CHECK(std::abs(c[1] - 0.34517) <= 1e-5);
  CHECK(std::abs(c[2] - 0.50514) <= 1e-5);
  CHECK(std::abs(c[3] - 0.50514) <= 1e-5);

  CHECK_THROWS_AS(link_cost({1.0, 2.0}, kSingleEdge), ValidationError);
}

TEST_CASE("social_cost evaluates sum f c(f)") {
  CHECK(social_cost({0.0, 0.0, 0.0, 0.0}, kFig1Params) == 0.0);
  CHECK(std::abs(social_cost({0.5238, 0.5238, 0.4762, 0.4762}, kFig1Params) -
                 0.8427) <= 1e-4);
  CHECK(social_cost({1.0, 1.0, 0.0, 0.0}, kFig1Params) ==
        doctest::Approx(1.8).epsilon(1e-15));
}

TEST_CASE("stochastic case-1 gradient") {
  // Zero noise sample collapses to the deterministic marginal cost.
  const GradientVector g0 =
      stochastic_gradient_case1({0.7}, {0.0}, 1.0, kSingleEdge);
  CHECK(g0[0] == doctest::Approx(0.3 + 5 * 0.6 * std::pow(0.7, 4)));

  // a(1+u) + 5 b x^4 (1+u)^5 at x = 1, u = 1: 0.6 + 3 * 32 = 96.6.
  CHECK(stochastic_gradient_case1({1.0}, {1.0}, 1.0, kSingleEdge)[0] ==
        doctest::Approx(96.6).epsilon(1e-14));

  // beta = 0 is the same as the additive form with z = 0.
  const GradientVector a =
      stochastic_gradient_case1({0.9}, {0.4}, 0.0, kSingleEdge);
  const GradientVector b =
      stochastic_gradient_case2({0.9}, {0.0}, kSingleEdge);
  CHECK(a[0] == b[0]);

  CHECK_THROWS_AS(stochastic_gradient_case1({1.0}, {1.5}, 1.0, kSingleEdge),
                  ValidationError);
  CHECK_THROWS_AS(stochastic_gradient_case1({1.0}, {0.5}, 2.0, kSingleEdge),
                  ValidationError);
}

TEST_CASE("stochastic case-2 gradient clamps negative flow") {
  CHECK(stochastic_gradient_case2({1.0}, {0.0}, kSingleEdge)[0] ==
        doctest::Approx(0.3 + 3.0));
  // a + 5 b (x+z)^4 at x = z = 1: 0.3 + 3 * 16 = 48.3.
  CHECK(stochastic_gradient_case2({1.0}, {1.0}, kSingleEdge)[0] ==
        doctest::Approx(48.3).epsilon(1e-14));
  // Flow cancels exactly.
  CHECK(stochastic_gradient_case2({0.5}, {-0.5}, kSingleEdge)[0] ==
        doctest::Approx(0.3));

  std::size_t clamps = 0;
  const GradientVector g =
      stochastic_gradient_case2({0.5}, {-1.0}, kSingleEdge, &clamps);
  CHECK(g[0] == doctest::Approx(0.3));
  CHECK(clamps == 1);
}

TEST_CASE("quintic mean factor and its reductions") {
  CHECK(quintic_mean_factor(1.0) == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  CHECK(quintic_mean_factor(0.0) == 1.0);
  CHECK(quintic_mean_factor(5e-9) == 1.0);  // series guard
  // Continuity across the guard threshold.
  CHECK(quintic_mean_factor(2e-8) == doctest::Approx(1.0).epsilon(1e-7));
  // Monotone in beta.
  double prev = 0.0;
  for (double beta = 0.05; beta <= 1.0; beta += 0.05) {
    const double m = quintic_mean_factor(beta);
    CHECK(m > prev);
    prev = m;
  }
}

TEST_CASE("expected case-1 gradient") {
  // a + 5 b x^4 * 16/3 at x = 1: 0.3 + 3 * 16/3 = 16.3.
  CHECK(expected_gradient_case1({1.0}, 1.0, kSingleEdge)[0] ==
        doctest::Approx(16.3).epsilon(1e-14));
  CHECK(expected_gradient_case1({1.0}, 0.0, kSingleEdge)[0] ==
        doctest::Approx(0.3 + 3.0).epsilon(1e-15));
}

TEST_CASE("expected case-1 gradient matches the Monte Carlo mean") {
  const double x = 0.8, beta = 0.6;
  const double expected =
      expected_gradient_case1({x}, beta, kSingleEdge)[0];
  auto sample = [x, beta](Rng& gen) {
    return stochastic_gradient_case1({x}, {gen.next_pm1()}, beta,
                                     kSingleEdge)[0];
  };
  const McEstimate est = mc_estimate(1000000, 61, sample);
  CHECK(std::abs(est.mean - expected) / expected < 0.005);
}

TEST_CASE("unbiasedness: standard error shrinks like n^-1/2") {
  const double x = 0.8, beta = 1.0;
  auto sample = [x, beta](Rng& gen) {
    return stochastic_gradient_case1({x}, {gen.next_pm1()}, beta,
                                     kSingleEdge)[0];
  };
  const McEstimate small = mc_estimate(10000, 17, sample);
  const McEstimate big = mc_estimate(1000000, 18, sample);
  const double ratio = small.std_error / big.std_error;
  CHECK(ratio > 5.0);  // exact n^-1/2 scaling gives 10
  CHECK(ratio < 20.0);
  const double expected = expected_gradient_case1({x}, beta, kSingleEdge)[0];
  CHECK(std::abs(small.mean - expected) < 4.0 * small.std_error);
  CHECK(std::abs(big.mean - expected) < 4.0 * big.std_error);
}

TEST_CASE("expected case-2 gradient") {
  NoiseMoments zero;
  zero.m2 = {0.0};
  zero.m3 = {0.0};
  zero.m4 = {0.0};
  CHECK(expected_gradient_case2({1.0}, zero, kSingleEdge)[0] ==
        doctest::Approx(0.3 + 3.0).epsilon(1e-15));

  // Uniform additive noise on [-c, c]: a + 5b (x^4 + 2 x^2 c^2 + c^4/5).
  const double c = 0.4, x = 0.9;
  NoiseMoments uniform;
  uniform.m2 = {c * c / 3.0};
  uniform.m3 = {0.0};
  uniform.m4 = {c * c * c * c / 5.0};
  const double by_hand =
      0.3 + 5 * 0.6 *
                (std::pow(x, 4) + 2.0 * x * x * c * c +
                 c * c * c * c / 5.0);
  CHECK(expected_gradient_case2({x}, uniform, kSingleEdge)[0] ==
        doctest::Approx(by_hand).epsilon(1e-14));

  auto sample = [x, c](Rng& gen) {
    return stochastic_gradient_case2({x}, {c * gen.next_pm1()},
                                     kSingleEdge)[0];
  };
  const McEstimate est = mc_estimate(1000000, 29, sample);
  CHECK(std::abs(est.mean - by_hand) / by_hand < 0.005);

  NoiseMoments missing;
  missing.m2 = {0.0};
  CHECK_THROWS_AS(expected_gradient_case2({x}, missing, kSingleEdge),
                  ValidationError);
}

TEST_CASE("expected social cost under multiplicative noise") {
  const FlowVector x = {0.3, 0.7, 0.1, 0.9};
  CHECK(expected_social_cost_case1(x, 0.0, kFig1Params) ==
        doctest::Approx(social_cost(x, kFig1Params)).epsilon(1e-15));

  // Values at the reported optima of the example network.
  CHECK(std::abs(expected_social_cost_case1(
                     {0.4206, 0.4206, 0.5794, 0.5794}, 1.0, kFig1Params) -
                 0.9857) <= 2e-4);
  CHECK(std::abs(expected_social_cost_case1(
                     {0.5238, 0.5238, 0.4762, 0.4762}, 1.0, kFig1Params) -
                 1.0690) <= 2e-4);
}

TEST_CASE("finite differences confirm the expected gradient") {
  const double h = 1e-5;
  Rng gen(33);
  for (double beta : {0.25, 0.5, 1.0}) {
    for (int i = 0; i < 20; ++i) {
      const FlowVector x = fig1_flows(0.1 + 0.8 * gen.next_unit());
      const GradientVector g = expected_gradient_case1(x, beta, kFig1Params);
      for (int e = 0; e < 4; ++e) {
        FlowVector hi = x, lo = x;
        hi[e] += h;
        lo[e] -= h;
        const double fd = (expected_social_cost_case1(hi, beta, kFig1Params) -
                           expected_social_cost_case1(lo, beta, kFig1Params)) /
                          (2.0 * h);
        CHECK(std::abs(fd - g[e]) / std::abs(g[e]) <= 1e-6);
      }
    }
  }
}

TEST_CASE("the expected objective is convex") {
  Rng gen(55);
  for (int i = 0; i < 200; ++i) {
    const FlowVector x = fig1_flows(gen.next_unit());
    const FlowVector y = fig1_flows(gen.next_unit());
    const double lambda = gen.next_unit();
    FlowVector mix(4);
    for (int e = 0; e < 4; ++e) {
      mix[e] = lambda * x[e] + (1.0 - lambda) * y[e];
    }
    const double beta = gen.next_unit();
    const double lhs = expected_social_cost_case1(mix, beta, kFig1Params);
    const double rhs =
        lambda * expected_social_cost_case1(x, beta, kFig1Params) +
        (1.0 - lambda) * expected_social_cost_case1(y, beta, kFig1Params);
    CHECK(lhs <= rhs + 1e-12);
  }
}

TEST_CASE("uniform flow moments") {
  // (2x)^r / (r+1) at beta = 1.
  CHECK(uniform_flow_moment(1.0, 1.0, 4) == doctest::Approx(3.2).epsilon(1e-14));
  CHECK(uniform_flow_moment(1.0, 1.0, 8) ==
        doctest::Approx(256.0 / 9.0).epsilon(1e-14));
  CHECK(uniform_flow_moment(0.7, 0.3, 1) == doctest::Approx(0.7).epsilon(1e-14));
  for (int r = 1; r <= 8; ++r) {
    CHECK(uniform_flow_moment(0.83, 1.0, r) ==
          doctest::Approx(std::pow(2 * 0.83, r) / (r + 1)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(uniform_flow_moment(1.0, 1.0, 0), ValidationError);
}

TEST_CASE("empirical moments match uniform_flow_moment") {
  const double x = 0.5, beta = 1.0;
  for (int r : {1, 2, 4, 8}) {
    auto sample = [x, beta, r](Rng& gen) {
      return std::pow(x * (1.0 + beta * gen.next_pm1()), r);
    };
    const McEstimate est = mc_estimate(400000, 100 + r, sample);
    const double expected = uniform_flow_moment(x, beta, r);
    CHECK(std::abs(est.mean - expected) <= 3.0 * est.std_error);
  }
}

TEST_CASE("variance of f^4") {
  CHECK(variance_of_f4(1.0) ==
        doctest::Approx(16.0 * 256.0 / 225.0).epsilon(1e-14));
  CHECK(variance_of_f4(0.0) == 0.0);
  CHECK(variance_of_f4(0.5) == doctest::Approx(16.0 / 225.0).epsilon(1e-14));
  // Consistency with the moment route.
  const double x = 0.5;
  const double via_moments = uniform_flow_moment(x, 1.0, 8) -
                             uniform_flow_moment(x, 1.0, 4) *
                                 uniform_flow_moment(x, 1.0, 4);
  CHECK(variance_of_f4(x) == doctest::Approx(via_moments).epsilon(1e-12));
}

TEST_CASE("Monte Carlo variance of f^4 at x = 0.5") {
  const double x = 0.5;
  auto sample = [x](Rng& gen) {
    const double f = x * (1.0 + gen.next_pm1());
    const double sq = f * f;
    return sq * sq;
  };
  const McEstimate est = mc_estimate(10000000, 77, sample);
  CHECK(std::abs(est.mean - uniform_flow_moment(x, 1.0, 4)) /
            uniform_flow_moment(x, 1.0, 4) <
        0.01);
  CHECK(std::abs(est.variance - variance_of_f4(x)) / variance_of_f4(x) < 0.01);
}

TEST_CASE("lipschitz_bound dominates observed gradient ratios") {
  const Network net = fig1();
  const CostParams params = net.cost_params();

  CostParams no_congestion = params;
  no_congestion.b = {0.0, 0.0, 0.0, 0.0};
  CHECK(lipschitz_bound(net, no_congestion, 1.0) == 0.0);

  CostParams doubled = params;
  for (double& b : doubled.b) b *= 2.0;
  CHECK(lipschitz_bound(net, doubled, 1.0) ==
        doctest::Approx(2.0 * lipschitz_bound(net, params, 1.0)).epsilon(1e-12));

  const double bound = lipschitz_bound(net, params, 1.0);
  CHECK(bound > 0.0);
  Rng gen(321);
  for (int i = 0; i < 10000; ++i) {
    const FlowVector x = fig1_flows(gen.next_unit());
    const FlowVector y = fig1_flows(gen.next_unit());
    const GradientVector gx = expected_gradient_case1(x, 1.0, params);
    const GradientVector gy = expected_gradient_case1(y, 1.0, params);
    double num = 0.0, den = 0.0;
    for (int e = 0; e < 4; ++e) {
      num += (gx[e] - gy[e]) * (gx[e] - gy[e]);
      den += (x[e] - y[e]) * (x[e] - y[e]);
    }
    if (den == 0.0) continue;
    CHECK(std::sqrt(num) <= bound * std::sqrt(den));
  }
}
