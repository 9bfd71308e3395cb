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

#include "tassign/fw_solver.hpp"
#include "tassign/mc.hpp"
#include "tassign/network.hpp"
#include "tassign/sfwta.hpp"

// The experiment runners behind the CLI commands. Each writes its CSV data
// (and an SVG rendering of the same data) into an output directory and
// returns the headline numbers. Reruns with identical inputs produce
// byte-identical CSVs.

namespace tassign {

/// flows.csv: edge id, tail, head, flow.
std::string write_flows_csv(const std::string& out_dir, const Network& net,
                            const FlowVector& flows);

/// flows.svg: the flow of each edge over the edge index.
std::string write_flows_svg(const std::string& out_dir, const Network& net,
                            const FlowVector& flows);

/// trace.csv: iteration, max_rel_change, sampled_cost, tracking_error
/// (tracking_error is empty for records without tracking data).
std::string write_trace_csv(const std::string& out_dir,
                            const SolverTrace& trace);

/// trace.svg: log-log rendering of the relative-change and tracking-error
/// columns.
std::string write_trace_svg(const std::string& out_dir,
                            const SolverTrace& trace);

struct CompareResult {
  FlowVector flows_stochastic;    // solve_expected at the environment beta
  FlowVector flows_deterministic; // solve_deterministic
  double final_mean_stochastic = 0.0;
  double final_mean_deterministic = 0.0;
  std::string csv_path;
  std::string svg_path;
  // Running means per step, averaged over replications; index 0 is step 1.
  std::vector<double> running_mean_stochastic;
  std::vector<double> running_mean_deterministic;
};

/// Evaluates both strategies' flows on a common random-number noise stream
/// (the same [-1,1] variates drive both) for `steps` steps, writing
/// compare.csv (step, running_mean_stochastic, running_mean_deterministic)
/// and compare.svg. Replications use derived seeds and average the per-step
/// costs; rows are written in step order regardless of scheduling.
CompareResult run_compare(const Network& net, double beta,
                          std::int64_t steps, std::uint64_t seed,
                          int replications, const std::string& out_dir,
                          const FwConfig& fw_config = {},
                          Execution exec = Execution::Parallel);

struct TraceRunResult {
  SfwtaResult solve;
  double first_window_rel_change = 0.0;
  double final_window_rel_change = 0.0;
  TrackingErrorSummary tracking_summary;
  std::string csv_path;
  std::string svg_path;
};

/// Runs the stochastic solver and writes trace.csv plus a log-scale SVG of
/// the relative-change and tracking-error columns.
TraceRunResult run_trace(const Network& net, const NoiseModel& noise,
                         const StepSchedule& schedule, const SfwtaStop& stop,
                         const std::string& out_dir,
                         std::int64_t snapshot_every = 100,
                         int window = 100);

struct SweepRow {
  double beta = 0.0;
  double cost_stochastic = 0.0;     // expected cost of the expected-optimal flows
  double cost_deterministic = 0.0;  // expected cost of the deterministic-optimal flows
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string csv_path;
  std::string svg_path;
};

/// For each beta: solve the expected surrogate and evaluate both strategies
/// by the closed-form expected cost at that beta. sweep.csv columns:
/// beta, cost_stoch, cost_det.
SweepResult run_beta_sweep(const Network& net,
                           const std::vector<double>& betas,
                           const std::string& out_dir,
                           const FwConfig& fw_config = {});

}  // namespace tassign
