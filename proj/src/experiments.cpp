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

#include "tassign/experiments.hpp"

#include <cmath>
#include <filesystem>

#include "tassign/csv.hpp"
#include "tassign/noise.hpp"
#include "tassign/svg.hpp"

namespace tassign {

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
}

// Mean of the max_rel_change column over records [begin, begin+window).
double window_mean_rel_change(const SolverTrace& trace, std::size_t begin,
                              std::size_t window) {
  double acc = 0.0;
  for (std::size_t i = begin; i < begin + window; ++i) {
    acc += trace.records[i].max_rel_change;
  }
  return acc / static_cast<double>(window);
}

}  // namespace

std::string write_flows_csv(const std::string& out_dir, const Network& net,
                            const FlowVector& flows) {
  ensure_dir(out_dir);
  const std::string path = join(out_dir, "flows.csv");
  CsvWriter csv(path);
  csv.row("edge", "tail", "head", "flow");
  for (int e = 0; e < net.edge_count(); ++e) {
    csv.row(std::int64_t{e}, net.node_names[net.edges[e].tail],
            net.node_names[net.edges[e].head], flows[e]);
  }
  return path;
}

std::string write_flows_svg(const std::string& out_dir, const Network& net,
                            const FlowVector& flows) {
  ensure_dir(out_dir);
  const std::string path = join(out_dir, "flows.svg");
  Series series{"edge flow", {}};
  for (int e = 0; e < net.edge_count(); ++e) {
    series.points.push_back({static_cast<double>(e), flows[e]});
  }
  ChartOptions opt;
  opt.title = "Final edge flows";
  opt.x_label = "edge index";
  opt.y_label = "flow";
  write_line_chart(path, {series}, opt);
  return path;
}

std::string write_trace_csv(const std::string& out_dir,
                            const SolverTrace& trace) {
  ensure_dir(out_dir);
  const std::string path = join(out_dir, "trace.csv");
  CsvWriter csv(path);
  csv.row("iteration", "max_rel_change", "sampled_cost", "tracking_error");
  for (const IterationRecord& rec : trace.records) {
    if (std::isnan(rec.tracking_error)) {
      csv.row(rec.iteration, rec.max_rel_change, rec.cost, "");
    } else {
      csv.row(rec.iteration, rec.max_rel_change, rec.cost,
              rec.tracking_error);
    }
  }
  return path;
}

std::string write_trace_svg(const std::string& out_dir,
                            const SolverTrace& trace) {
  ensure_dir(out_dir);
  const std::string path = join(out_dir, "trace.svg");
  Series rel{"max relative change", {}};
  Series err{"gradient tracking error", {}};
  for (const IterationRecord& rec : trace.records) {
    const double it = static_cast<double>(rec.iteration + 1);
    rel.points.push_back({it, rec.max_rel_change});
    if (!std::isnan(rec.tracking_error)) {
      err.points.push_back({it, rec.tracking_error});
    }
  }
  ChartOptions opt;
  opt.title = "Convergence trace";
  opt.x_label = "iteration";
  opt.y_label = "value (log scale)";
  opt.log_y = true;
  opt.log_x = true;
  std::vector<Series> series{rel};
  if (!err.points.empty()) series.push_back(err);
  write_line_chart(path, series, opt);
  return path;
}

CompareResult run_compare(const Network& net, double beta, std::int64_t steps,
                          std::uint64_t seed, int replications,
                          const std::string& out_dir,
                          const FwConfig& fw_config, Execution exec) {
  if (steps < 1) throw ValidationError("steps must be >= 1");
  if (replications < 1) throw ValidationError("replications must be >= 1");
  ensure_dir(out_dir);
  const CostParams params = net.cost_params();

  CompareResult result;
  result.flows_deterministic = solve_deterministic(net, params, fw_config).flows;
  result.flows_stochastic = solve_expected(net, params, beta, fw_config).flows;

  const int n_edges = net.edge_count();
  auto cost_of = [&](const FlowVector& x, const std::vector<double>& u) {
    double total = 0.0;
    for (int e = 0; e < n_edges; ++e) {
      const double f = x[e] * (1.0 + beta * u[e]);  // common random numbers
      const double sq = f * f;
      total += f * (params.a[e] + params.b[e] * sq * sq);
    }
    return total;
  };

  // Per-step costs summed over replications; replication r owns a derived
  // seed and its own slab, merged in replication order afterwards, so the
  // result does not depend on the execution policy.
  std::vector<std::vector<double>> sto(replications),
      det(replications);
  auto one_replication = [&](int r) {
    Rng gen(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> u(n_edges);
    sto[r].resize(steps);
    det[r].resize(steps);
    for (std::int64_t s = 0; s < steps; ++s) {
      for (int e = 0; e < n_edges; ++e) u[e] = gen.next_pm1();
      sto[r][s] = cost_of(result.flows_stochastic, u);
      det[r][s] = cost_of(result.flows_deterministic, u);
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < replications; ++r) one_replication(r);
  } else {
    for (int r = 0; r < replications; ++r) one_replication(r);
  }

  result.running_mean_stochastic.resize(steps);
  result.running_mean_deterministic.resize(steps);
  double acc_sto = 0.0, acc_det = 0.0;
  for (std::int64_t s = 0; s < steps; ++s) {
    double step_sto = 0.0, step_det = 0.0;
    for (int r = 0; r < replications; ++r) {
      step_sto += sto[r][s];
      step_det += det[r][s];
    }
    acc_sto += step_sto / replications;
    acc_det += step_det / replications;
    result.running_mean_stochastic[s] = acc_sto / static_cast<double>(s + 1);
    result.running_mean_deterministic[s] = acc_det / static_cast<double>(s + 1);
  }
  result.final_mean_stochastic = result.running_mean_stochastic.back();
  result.final_mean_deterministic = result.running_mean_deterministic.back();

  result.csv_path = join(out_dir, "compare.csv");
  {
    CsvWriter csv(result.csv_path);
    csv.row("step", "running_mean_stochastic", "running_mean_deterministic");
    for (std::int64_t s = 0; s < steps; ++s) {
      csv.row(s + 1, result.running_mean_stochastic[s],
              result.running_mean_deterministic[s]);
    }
  }

  result.svg_path = join(out_dir, "compare.svg");
  Series s1{"stochastic strategy", {}};
  Series s2{"deterministic strategy", {}};
  for (std::int64_t s = 0; s < steps; ++s) {
    s1.points.push_back({static_cast<double>(s + 1),
                         result.running_mean_stochastic[s]});
    s2.points.push_back({static_cast<double>(s + 1),
                         result.running_mean_deterministic[s]});
  }
  ChartOptions opt;
  opt.title = "Running mean total cost under noise";
  opt.x_label = "step";
  opt.y_label = "running mean cost";
  write_line_chart(result.svg_path, {s1, s2}, opt);
  return result;
}

TraceRunResult run_trace(const Network& net, const NoiseModel& noise,
                         const StepSchedule& schedule, const SfwtaStop& stop,
                         const std::string& out_dir,
                         std::int64_t snapshot_every, int window) {
  ensure_dir(out_dir);
  TraceRunResult result;
  result.solve = solve_sfwta(net, net.cost_params(), noise, schedule, stop,
                             nullptr, snapshot_every);
  const SolverTrace& trace = result.solve.trace;
  const std::size_t n = trace.records.size();
  const std::size_t w = std::min<std::size_t>(window, n);
  if (w > 0) {
    result.first_window_rel_change = window_mean_rel_change(trace, 0, w);
    result.final_window_rel_change = window_mean_rel_change(trace, n - w, w);
  }
  if (w > 0 && n >= 2 * w) {
    result.tracking_summary =
        tracking_error_diagnostic(trace, static_cast<int>(w));
  }

  result.csv_path = write_trace_csv(out_dir, trace);
  result.svg_path = write_trace_svg(out_dir, trace);
  return result;
}

SweepResult run_beta_sweep(const Network& net,
                           const std::vector<double>& betas,
                           const std::string& out_dir,
                           const FwConfig& fw_config) {
  if (betas.empty()) throw ValidationError("beta sweep needs at least one beta");
  ensure_dir(out_dir);
  const CostParams params = net.cost_params();
  const FlowVector x_det = solve_deterministic(net, params, fw_config).flows;

  SweepResult result;
  for (double beta : betas) {
    const FlowVector x_sto = solve_expected(net, params, beta, fw_config).flows;
    SweepRow row;
    row.beta = beta;
    row.cost_stochastic = expected_social_cost_case1(x_sto, beta, params);
    row.cost_deterministic = expected_social_cost_case1(x_det, beta, params);
    result.rows.push_back(row);
  }

  result.csv_path = join(out_dir, "sweep.csv");
  {
    CsvWriter csv(result.csv_path);
    csv.row("beta", "cost_stoch", "cost_det");
    for (const SweepRow& row : result.rows) {
      csv.row(row.beta, row.cost_stochastic, row.cost_deterministic);
    }
  }

  result.svg_path = join(out_dir, "sweep.svg");
  Series s1{"stochastic strategy", {}};
  Series s2{"deterministic strategy", {}};
  for (const SweepRow& row : result.rows) {
    s1.points.push_back({row.beta, row.cost_stochastic});
    s2.points.push_back({row.beta, row.cost_deterministic});
  }
  ChartOptions opt;
  opt.title = "Expected cost vs noise spread";
  opt.x_label = "spread beta";
  opt.y_label = "expected cost";
  write_line_chart(result.svg_path, {s1, s2}, opt);
  return result;
}

}  // namespace tassign
