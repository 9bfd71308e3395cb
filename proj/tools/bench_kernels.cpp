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

// Times the serial reference implementation of each data-parallel kernel
// against the OpenMP version on the same inputs and checks that they agree
// bit-for-bit (the chunked designs make that exact, not approximate).

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tassign/mc.hpp"
#include "tassign/oracle.hpp"

namespace {

using namespace tassign;

const char kNetworkText[] =
    "NODES A B C D\n"
    "EDGE A B 0.3 0.6\n"
    "EDGE B D 0.3 0.6\n"
    "EDGE A C 0.5 0.1\n"
    "EDGE C D 0.5 0.1\n"
    "DEMAND A D 1.0\n";

double time_once(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void report(const char* name, double serial_s, double parallel_s,
            bool identical) {
  std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   "
              "bitwise-equal %s\n",
              name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              identical ? "yes" : "NO");
}

void bench_mc_moments(std::uint64_t n) {
  const double x = 0.5, beta = 1.0;
  auto sample = [x, beta](Rng& gen) {
    const double f = x * (1.0 + beta * gen.next_pm1());
    const double sq = f * f;
    return sq * sq;  // f^4
  };
  McEstimate serial, parallel;
  const double ts = time_once(
      [&] { serial = mc_estimate(n, 42, sample, Execution::Serial); });
  const double tp = time_once(
      [&] { parallel = mc_estimate(n, 42, sample, Execution::Parallel); });
  report("mc_estimate (flow moments)", ts, tp,
         serial.mean == parallel.mean && serial.variance == parallel.variance);
}

void bench_mc_cost(std::uint64_t n) {
  const Network net = parse_network(kNetworkText);
  const CostParams params = net.cost_params();
  const FlowVector flows = {0.4206, 0.4206, 0.5794, 0.5794};
  const NoiseModel noise = NoiseModel::multiplicative_uniform(1.0, 0);
  McEstimate serial, parallel;
  const double ts = time_once([&] {
    Rng gen(7);
    serial = oracle::monte_carlo_expected_cost(flows, params, noise, n, gen,
                                               Execution::Serial);
  });
  const double tp = time_once([&] {
    Rng gen(7);
    parallel = oracle::monte_carlo_expected_cost(flows, params, noise, n, gen,
                                                 Execution::Parallel);
  });
  report("monte_carlo_expected_cost", ts, tp, serial.mean == parallel.mean);
}

void bench_grid(int resolution) {
  const Network net = parse_network(kNetworkText);
  const auto problem = oracle::build_path_space_problem(
      net, oracle::PathSpaceProblem::Objective::ExpectedCase1, 1.0);
  oracle::GridResult serial, parallel;
  const double ts = time_once([&] {
    serial = oracle::grid_minimize(problem, resolution, Execution::Serial);
  });
  const double tp = time_once([&] {
    parallel = oracle::grid_minimize(problem, resolution, Execution::Parallel);
  });
  report("grid_minimize (path space)", ts, tp,
         serial.objective == parallel.objective &&
             serial.edge_flows == parallel.edge_flows);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel falls back to serial\n");
#endif
  bench_mc_moments(40000000);
  bench_mc_cost(4000000);
  bench_grid(4000000);
  return 0;
}
