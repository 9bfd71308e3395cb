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

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tassign/experiments.hpp"
#include "tassign/util.hpp"

namespace {

using namespace tassign;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitSolverError = 2;

std::string default_out_dir(const std::string& command) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  localtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm);
  return (std::filesystem::path("out") / (command + "-" + stamp)).string();
}

std::string flows_to_string(const FlowVector& flows) {
  std::string s;
  char buf[32];
  for (double f : flows) {
    std::snprintf(buf, sizeof(buf), "%.4f", f);
    if (!s.empty()) s += ' ';
    s += buf;
  }
  return s;
}

struct CommonOptions {
  std::string network_path;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::int64_t iters = -1;  // -1: per-method default
  double tol = 1e-6;
  int patience = 50;
  int replications = 1;
  std::int64_t snapshot_every = 100;
  std::string out_dir;
  StepSchedule schedule;

  std::int64_t iters_or(std::int64_t fallback) const {
    return iters > 0 ? iters : fallback;
  }
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_schedule) {
  cmd->add_option("--network", opt.network_path, "network file")->required();
  cmd->add_option("--beta", opt.beta, "noise spread in [0,1]");
  cmd->add_option("--seed", opt.seed, "64-bit noise seed");
  cmd->add_option("--iters", opt.iters, "iteration / step budget");
  cmd->add_option("--tol", opt.tol, "relative-change stopping tolerance");
  cmd->add_option("--patience", opt.patience,
                  "consecutive quiet iterations required to stop");
  cmd->add_option("--replications", opt.replications, "replication count");
  cmd->add_option("--snapshot-every", opt.snapshot_every,
                  "flow snapshot interval in iterations");
  cmd->add_option("--out", opt.out_dir, "output directory");
  if (with_schedule) {
    cmd->add_option("--rho0", opt.schedule.rho0, "rho_t multiplier");
    cmd->add_option("--prho", opt.schedule.p_rho, "rho_t decay exponent");
    cmd->add_option("--gamma0", opt.schedule.gamma0, "gamma_t multiplier");
    cmd->add_option("--pgamma", opt.schedule.p_gamma,
                    "gamma_t decay exponent");
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

int cmd_solve(const CommonOptions& opt, const std::string& method) {
  Timer timer;
  const Network net = load_network(opt.network_path);
  const CostParams params = net.cost_params();
  const std::string out_dir =
      opt.out_dir.empty() ? default_out_dir("solve") : opt.out_dir;

  std::cout << "command: solve\nnetwork: " << opt.network_path
            << "\nmethod: " << method << '\n';

  FlowVector flows;
  SolverTrace trace;
  std::int64_t iterations = 0;
  bool converged = true;
  double objective = 0.0;
  double expected_objective = 0.0;

  if (method == "fw" || method == "expected") {
    FwConfig config;
    config.max_iters = opt.iters_or(10000);
    config.rel_change_tol = opt.tol;
    config.snapshot_every = opt.snapshot_every;
    FwResult result = method == "fw"
                          ? solve_deterministic(net, params, config)
                          : solve_expected(net, params, opt.beta, config);
    flows = std::move(result.flows);
    trace = std::move(result.trace);
    iterations = result.iterations;
    converged = result.converged;
    objective = social_cost(flows, params);
    expected_objective = expected_social_cost_case1(flows, opt.beta, params);
    if (method == "expected") std::cout << "beta: " << opt.beta << '\n';
  } else if (method == "sfwta") {
    const NoiseModel noise =
        NoiseModel::multiplicative_uniform(opt.beta, opt.seed);
    SfwtaStop stop;
    stop.max_iters = opt.iters_or(100000);
    stop.rel_change_tol = opt.tol;
    stop.patience = opt.patience;
    SfwtaResult result = solve_sfwta(net, params, noise, opt.schedule, stop,
                                     nullptr, opt.snapshot_every);
    flows = std::move(result.flows);
    trace = std::move(result.trace);
    iterations = result.iterations;
    converged = result.converged;
    objective = social_cost(flows, params);
    expected_objective = expected_social_cost_case1(flows, opt.beta, params);
    std::cout << "beta: " << opt.beta << "\nseed: " << opt.seed << '\n';
  } else {
    std::cerr << "unknown method '" << method << "'\n";
    return kExitInputError;
  }

  if (!converged) {
    std::cerr << "warning: iteration budget exhausted before convergence\n";
  }
  const std::string flows_csv = write_flows_csv(out_dir, net, flows);
  const std::string trace_csv = write_trace_csv(out_dir, trace);
  const std::string flows_svg = write_flows_svg(out_dir, net, flows);
  const std::string trace_svg = write_trace_svg(out_dir, trace);

  std::cout << "flows: " << flows_to_string(flows) << '\n';
  std::cout << "objective: " << format_double(objective) << '\n';
  std::cout << "expected_objective: " << format_double(expected_objective)
            << '\n';
  std::cout << "iterations: " << iterations << '\n';
  std::cout << "flows_csv: " << flows_csv << '\n';
  std::cout << "trace_csv: " << trace_csv << '\n';
  std::cout << "flows_svg: " << flows_svg << '\n';
  std::cout << "trace_svg: " << trace_svg << '\n';
  std::cout << "seconds: " << timer.seconds() << '\n';
  return kExitOk;
}

int cmd_compare(const CommonOptions& opt) {
  Timer timer;
  const Network net = load_network(opt.network_path);
  const std::string out_dir =
      opt.out_dir.empty() ? default_out_dir("compare") : opt.out_dir;

  std::cout << "command: compare\nnetwork: " << opt.network_path
            << "\nbeta: " << opt.beta << "\nsteps: " << opt.iters_or(100000)
            << "\nseed: " << opt.seed
            << "\nreplications: " << opt.replications << '\n';

  const CompareResult result = run_compare(net, opt.beta, opt.iters_or(100000), opt.seed,
                                           opt.replications, out_dir);
  std::cout << "flows_stochastic: " << flows_to_string(result.flows_stochastic)
            << '\n';
  std::cout << "flows_deterministic: "
            << flows_to_string(result.flows_deterministic) << '\n';
  std::cout << "final_mean_stochastic: "
            << format_double(result.final_mean_stochastic) << '\n';
  std::cout << "final_mean_deterministic: "
            << format_double(result.final_mean_deterministic) << '\n';
  std::cout << "stochastic_not_worse: "
            << (result.final_mean_stochastic <=
                        result.final_mean_deterministic
                    ? "yes"
                    : "no")
            << '\n';
  std::cout << "compare_csv: " << result.csv_path << '\n';
  std::cout << "compare_svg: " << result.svg_path << '\n';
  std::cout << "seconds: " << timer.seconds() << '\n';
  return kExitOk;
}

int cmd_trace(const CommonOptions& opt) {
  Timer timer;
  const Network net = load_network(opt.network_path);
  const std::string out_dir =
      opt.out_dir.empty() ? default_out_dir("trace") : opt.out_dir;

  std::cout << "command: trace\nnetwork: " << opt.network_path
            << "\nbeta: " << opt.beta << "\niters: " << opt.iters_or(100000)
            << "\nseed: " << opt.seed << '\n';

  const NoiseModel noise =
      NoiseModel::multiplicative_uniform(opt.beta, opt.seed);
  SfwtaStop stop;
  stop.max_iters = opt.iters_or(100000);
  stop.rel_change_tol = opt.tol;
  stop.patience = opt.patience;
  const TraceRunResult result = run_trace(net, noise, opt.schedule, stop,
                                          out_dir, opt.snapshot_every);

  std::cout << "flows: " << flows_to_string(result.solve.flows) << '\n';
  std::cout << "iterations: " << result.solve.iterations << '\n';
  std::cout << "first_window_rel_change: "
            << format_double(result.first_window_rel_change) << '\n';
  std::cout << "final_window_rel_change: "
            << format_double(result.final_window_rel_change) << '\n';
  std::cout << "rel_change_trend_decreasing: "
            << (result.final_window_rel_change <
                        result.first_window_rel_change
                    ? "yes"
                    : "no")
            << '\n';
  if (result.tracking_summary.window > 0) {
    std::cout << "tracking_error_first_window: "
              << format_double(result.tracking_summary.first_window_mean) << '\n';
    std::cout << "tracking_error_final_window: "
              << format_double(result.tracking_summary.final_window_mean) << '\n';
  }
  std::cout << "trace_csv: " << result.csv_path << '\n';
  std::cout << "trace_svg: " << result.svg_path << '\n';
  std::cout << "seconds: " << timer.seconds() << '\n';
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, std::vector<double> betas) {
  Timer timer;
  const Network net = load_network(opt.network_path);
  const std::string out_dir =
      opt.out_dir.empty() ? default_out_dir("sweep") : opt.out_dir;
  if (betas.empty()) {
    for (int i = 0; i <= 10; ++i) betas.push_back(0.1 * i);
  }

  std::cout << "command: sweep\nnetwork: " << opt.network_path << '\n';
  const SweepResult result = run_beta_sweep(net, betas, out_dir);

  bool stochastic_never_worse = true;
  bool monotone = true;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (row.cost_stochastic > row.cost_deterministic + 1e-12) {
      stochastic_never_worse = false;
    }
    if (i > 0 && (row.cost_stochastic < result.rows[i - 1].cost_stochastic ||
                  row.cost_deterministic <
                      result.rows[i - 1].cost_deterministic)) {
      monotone = false;
    }
    std::cout << "beta " << format_double(row.beta) << ": stochastic "
              << format_double(row.cost_stochastic) << ", deterministic "
              << format_double(row.cost_deterministic) << '\n';
  }
  std::cout << "stochastic_never_worse: "
            << (stochastic_never_worse ? "yes" : "no") << '\n';
  std::cout << "costs_nondecreasing: " << (monotone ? "yes" : "no") << '\n';
  std::cout << "sweep_csv: " << result.csv_path << '\n';
  std::cout << "sweep_svg: " << result.svg_path << '\n';
  std::cout << "seconds: " << timer.seconds() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Social-optimum traffic assignment: deterministic Frank-Wolfe, its "
      "expected-cost surrogate, and the online stochastic solver (SFWTA)"};
  app.require_subcommand(1);

  CommonOptions solve_opt, compare_opt, trace_opt, sweep_opt;
  std::string method = "fw";
  std::vector<double> betas;

  CLI::App* solve = app.add_subcommand("solve", "solve one assignment problem");
  add_common_flags(solve, solve_opt, true);
  solve->add_option("--method", method, "fw | expected | sfwta");

  CLI::App* compare = app.add_subcommand(
      "compare",
      "evaluate both strategies on a common noise stream (running means)");
  add_common_flags(compare, compare_opt, false);

  CLI::App* trace = app.add_subcommand(
      "trace", "stochastic solver convergence trace and diagnostics");
  add_common_flags(trace, trace_opt, true);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "expected cost of both strategies across noise spreads");
  sweep->alias("beta-sweep");
  add_common_flags(sweep, sweep_opt, false);
  sweep->add_option("--betas", betas, "spread values (default 0, 0.1, ..., 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_opt, method);
    if (compare->parsed()) return cmd_compare(compare_opt);
    if (trace->parsed()) return cmd_trace(trace_opt);
    if (sweep->parsed()) return cmd_sweep(sweep_opt, betas);
  } catch (const tassign::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
