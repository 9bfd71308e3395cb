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

#include "tassign/cost_model.hpp"
#include "tassign/network.hpp"
#include "tassign/rng.hpp"

namespace tassign {

/// The random-flow model for the uncertain part z of the link flow f = x + z.
///
/// MultiplicativeUniform: z_e = beta * x_e * u_e with u_e i.i.d. uniform on
/// [-1, 1], so |z_e| <= beta x_e and E[z_e] = 0. beta in [0, 1] is the spread;
/// beta = 0 is the deterministic environment.
///
/// AdditiveUniform: z_e i.i.d. uniform on [-c_e, c_e], independent of x
/// (zero mean, all moments finite).
struct NoiseModel {
  enum class Kind { MultiplicativeUniform, AdditiveUniform };

  Kind kind = Kind::MultiplicativeUniform;
  double beta = 1.0;
  std::vector<double> half_width;  // per-edge c_e, AdditiveUniform only
  std::uint64_t seed = 0;

  static NoiseModel multiplicative_uniform(double beta, std::uint64_t seed) {
    NoiseModel m;
    m.kind = Kind::MultiplicativeUniform;
    m.beta = beta;
    m.seed = seed;
    return m;
  }

  static NoiseModel additive_uniform(std::vector<double> half_width,
                                     std::uint64_t seed) {
    NoiseModel m;
    m.kind = Kind::AdditiveUniform;
    m.beta = 0.0;
    m.half_width = std::move(half_width);
    m.seed = seed;
    return m;
  }

  /// Throws ValidationError when beta is outside [0, 1], a half width is
  /// negative, or the half-width dimension does not match `edge_count`.
  void validate(int edge_count) const;

  /// E[z^k] per edge for k = 2..4 (E[z] = 0). Used by the expected gradient
  /// and the gradient-tracking diagnostic.
  NoiseMoments moments(int edge_count) const;
};

struct NoiseSample {
  std::vector<double> z;
  std::vector<double> u;  // the raw [-1,1] variates; multiplicative only
};

/// Draws one z vector, edge by edge in edge-list order, advancing `gen`.
NoiseSample sample_noise(const FlowVector& x, const NoiseModel& model,
                         Rng& gen);

/// Allocation-free variant for hot loops; u is filled for the multiplicative
/// model and left untouched otherwise.
void sample_noise_into(const FlowVector& x, const NoiseModel& model, Rng& gen,
                       std::vector<double>& z, std::vector<double>& u);

}  // namespace tassign
