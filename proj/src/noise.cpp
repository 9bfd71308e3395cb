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

#include "tassign/noise.hpp"

namespace tassign {

void NoiseModel::validate(int edge_count) const {
  if (kind == Kind::MultiplicativeUniform) {
    if (beta < 0.0 || beta > 1.0) {
      throw ValidationError("spread beta must lie in [0, 1]");
    }
  } else {
    if (static_cast<int>(half_width.size()) != edge_count) {
      throw ValidationError("additive noise needs one half width per edge");
    }
    for (double c : half_width) {
      if (c < 0.0) throw ValidationError("negative noise half width");
    }
  }
}

NoiseMoments NoiseModel::moments(int edge_count) const {
  validate(edge_count);
  NoiseMoments m;
  m.m2.assign(edge_count, 0.0);
  m.m3.assign(edge_count, 0.0);
  m.m4.assign(edge_count, 0.0);
  if (kind == Kind::AdditiveUniform) {
    for (int e = 0; e < edge_count; ++e) {
      const double c = half_width[e];
      m.m2[e] = c * c / 3.0;
      m.m4[e] = c * c * c * c / 5.0;
    }
  }
  // MultiplicativeUniform moments depend on x; callers use the closed-form
  // case-1 expressions instead.
  return m;
}

void sample_noise_into(const FlowVector& x, const NoiseModel& model, Rng& gen,
                       std::vector<double>& z, std::vector<double>& u) {
  model.validate(static_cast<int>(x.size()));
  z.resize(x.size());
  if (model.kind == NoiseModel::Kind::MultiplicativeUniform) {
    u.resize(x.size());
    for (std::size_t e = 0; e < x.size(); ++e) {
      u[e] = gen.next_pm1();
      z[e] = model.beta * x[e] * u[e];
    }
  } else {
    for (std::size_t e = 0; e < x.size(); ++e) {
      z[e] = model.half_width[e] * gen.next_pm1();
    }
  }
}

NoiseSample sample_noise(const FlowVector& x, const NoiseModel& model,
                         Rng& gen) {
  NoiseSample s;
  sample_noise_into(x, model, gen, s.z, s.u);
  return s;
}

}  // namespace tassign
