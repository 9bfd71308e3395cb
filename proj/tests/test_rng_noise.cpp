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
#include <random>

#include "doctest.h"
#include "tassign/noise.hpp"
#include "tassign/rng.hpp"
#include "test_helpers.hpp"

using namespace tassign;
using namespace tassign::testing;

TEST_CASE("equal seeds give equal streams") {
  Rng a(123), b(123);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  Rng c(123), d(124);
  bool any_diff = false;
  for (int i = 0; i < 10; ++i) any_diff |= c.next_u64() != d.next_u64();
  CHECK(any_diff);
}

TEST_CASE("the engine bit stream is the standard mt19937_64 stream") {
  // The standard pins the 10000th output of a default-seeded mt19937_64;
  // matching it here documents that the stream is platform-independent.
  Rng gen(std::mt19937_64::default_seed);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = gen.next_u64();
  CHECK(v == 9981545732273789042ull);
}

TEST_CASE("variates stay in their intervals") {
  Rng gen(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = gen.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double s = gen.next_pm1();
    CHECK(s >= -1.0);
    CHECK(s < 1.0);
  }
}

TEST_CASE("derive_seed matches the documented splitting rule") {
  CHECK(derive_seed(42, 0) == splitmix64(42));
  CHECK(derive_seed(42, 7) == splitmix64(42 ^ 7));
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 1) != derive_seed(43, 1));
}

TEST_CASE("multiplicative noise respects the exact bound") {
  const NoiseModel model = NoiseModel::multiplicative_uniform(0.7, 0);
  Rng gen(19);
  FlowVector x = {0.0, 0.25, 1.0, 3.5};
  for (int i = 0; i < 10000; ++i) {
    const NoiseSample s = sample_noise(x, model, gen);
    for (int e = 0; e < 4; ++e) {
      CHECK(std::abs(s.z[e]) <= 0.7 * x[e]);
      CHECK(std::abs(s.u[e]) <= 1.0);
    }
    CHECK(s.z[0] == 0.0);  // no phantom flow on empty links
  }
}

TEST_CASE("beta zero produces exactly zero noise") {
  const NoiseModel model = NoiseModel::multiplicative_uniform(0.0, 0);
  Rng gen(3);
  const NoiseSample s = sample_noise({1.0, 2.0}, model, gen);
  CHECK(s.z == std::vector<double>{0.0, 0.0});
}

TEST_CASE("noise sampling is reproducible") {
  const NoiseModel model = NoiseModel::multiplicative_uniform(1.0, 0);
  Rng g1(99), g2(99);
  const FlowVector x = {0.4, 0.6};
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_noise(x, model, g1).z == sample_noise(x, model, g2).z);
  }
}

TEST_CASE("sample mean and variance match the uniform model") {
  // z = beta x u has mean 0 and variance x^2 beta^2 / 3.
  const double x = 0.5, beta = 1.0;
  const std::uint64_t n = 1000000;
  const NoiseModel model = NoiseModel::multiplicative_uniform(beta, 0);
  Rng gen(2024);
  FlowVector xv = {x};
  std::vector<double> z, u;
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    sample_noise_into(xv, model, gen, z, u);
    sum += z[0];
    sum_sq += z[0] * z[0];
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  const double sigma = x * beta / std::sqrt(3.0);
  CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(double(n)));
  CHECK(var == doctest::Approx(x * x * beta * beta / 3.0).epsilon(0.01));
}

TEST_CASE("noise is independent across edges") {
  const NoiseModel model = NoiseModel::multiplicative_uniform(1.0, 0);
  Rng gen(5);
  const FlowVector x = {1.0, 1.0, 1.0, 1.0};
  const int n = 100000;
  std::vector<double> z, u;
  double sum[4] = {0, 0, 0, 0}, sum_sq[4] = {0, 0, 0, 0};
  double cross[4][4] = {};
  for (int i = 0; i < n; ++i) {
    sample_noise_into(x, model, gen, z, u);
    for (int e = 0; e < 4; ++e) {
      sum[e] += z[e];
      sum_sq[e] += z[e] * z[e];
      for (int f = e + 1; f < 4; ++f) cross[e][f] += z[e] * z[f];
    }
  }
  for (int e = 0; e < 4; ++e) {
    const double var_e = sum_sq[e] / n - (sum[e] / n) * (sum[e] / n);
    for (int f = e + 1; f < 4; ++f) {
      const double var_f = sum_sq[f] / n - (sum[f] / n) * (sum[f] / n);
      const double cov = cross[e][f] / n - (sum[e] / n) * (sum[f] / n);
      CHECK(std::abs(cov / std::sqrt(var_e * var_f)) < 0.01);
    }
  }
}

TEST_CASE("additive noise stays inside its half width") {
  const NoiseModel model = NoiseModel::additive_uniform({0.1, 0.0, 2.0}, 0);
  Rng gen(8);
  const FlowVector x = {1.0, 1.0, 1.0};
  for (int i = 0; i < 1000; ++i) {
    const NoiseSample s = sample_noise(x, model, gen);
    CHECK(std::abs(s.z[0]) <= 0.1);
    CHECK(s.z[1] == 0.0);
    CHECK(std::abs(s.z[2]) <= 2.0);
  }
  const NoiseMoments m = model.moments(3);
  CHECK(m.m2[0] == doctest::Approx(0.01 / 3.0));
  CHECK(m.m3[0] == 0.0);
  CHECK(m.m4[2] == doctest::Approx(16.0 / 5.0));
}

TEST_CASE("noise models validate their parameters") {
  Rng gen(1);
  const FlowVector one = {1.0};
  CHECK_THROWS_AS(
      sample_noise(one, NoiseModel::multiplicative_uniform(1.5, 0), gen),
      ValidationError);
  CHECK_THROWS_AS(
      sample_noise(one, NoiseModel::multiplicative_uniform(-0.1, 0), gen),
      ValidationError);
  CHECK_THROWS_AS(
      sample_noise({1.0, 1.0}, NoiseModel::additive_uniform({0.1}, 0), gen),
      ValidationError);
  CHECK_THROWS_AS(
      sample_noise(one, NoiseModel::additive_uniform({-0.1}, 0), gen),
      ValidationError);
}
