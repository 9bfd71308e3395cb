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

#include "tassign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <new>

namespace tassign::oracle {

namespace {

// 3-point Gauss-Legendre on [-1, 1]; exact for polynomials of degree <= 5,
// which covers every integrand in u used below.
constexpr double kGlNode = 0.7745966692414834;  // sqrt(3/5)
constexpr double kGlW0 = 8.0 / 9.0;
constexpr double kGlW1 = 5.0 / 9.0;

// E over u ~ U[-1,1] of fn(u); the 1/2 density folds into the weights.
template <typename Fn>
double uniform_expectation(Fn fn) {
  return 0.5 * (kGlW1 * fn(-kGlNode) + kGlW0 * fn(0.0) + kGlW1 * fn(kGlNode));
}

double edge_cost_term(double f, double a, double b) {
  const double sq = f * f;
  return f * (a + b * sq * sq);
}

// d/dx of (x(1+bu))(a + b_e (x(1+bu))^4) at spread beta, noise variate u.
double edge_marginal_term(double x, double u, double beta, double a,
                          double b) {
  const double s = 1.0 + beta * u;
  const double xs = x * s;
  const double sq = xs * xs;
  return s * (a + 5.0 * b * sq * sq);
}

double expected_edge_cost(double x, double beta, double a, double b) {
  return uniform_expectation([&](double u) {
    const double f = x * (1.0 + beta * u);
    return edge_cost_term(f, a, b);
  });
}

double expected_edge_marginal(double x, double beta, double a, double b) {
  return uniform_expectation(
      [&](double u) { return edge_marginal_term(x, u, beta, a, b); });
}

}  // namespace

PathSpaceProblem build_path_space_problem(
    const Network& net, PathSpaceProblem::Objective objective, double beta,
    std::size_t path_cap) {
  PathSpaceProblem problem;
  problem.net = &net;
  problem.objective = objective;
  problem.beta = beta;
  for (const Demand& d : net.demands) {
    PathSpaceProblem::OdPaths od;
    od.origin = d.origin;
    od.dest = d.dest;
    od.demand = d.rate;
    od.paths = enumerate_simple_paths(net, d.origin, d.dest, path_cap);
    if (od.paths.empty()) {
      throw ValidationError("demand pair has no path");
    }
    problem.od.push_back(std::move(od));
  }
  return problem;
}

double path_space_cost(const PathSpaceProblem& problem,
                       const std::vector<std::vector<double>>& path_flows) {
  const Network& net = *problem.net;
  FlowVector edge_flow(net.edge_count(), 0.0);
  for (std::size_t i = 0; i < problem.od.size(); ++i) {
    for (std::size_t p = 0; p < problem.od[i].paths.size(); ++p) {
      for (int e : problem.od[i].paths[p]) {
        edge_flow[e] += path_flows[i][p];
      }
    }
  }
  double total = 0.0;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (problem.objective == PathSpaceProblem::Objective::Deterministic) {
      total += edge_cost_term(edge_flow[e], net.edges[e].a, net.edges[e].b);
    } else {
      total += expected_edge_cost(edge_flow[e], problem.beta, net.edges[e].a,
                                  net.edges[e].b);
    }
  }
  return total;
}

namespace {

struct GridGeometry {
  // One entry per free dimension: [lo, lo + spacing * resolution] within the
  // owning OD pair's simplex.
  std::vector<double> lo;
  std::vector<double> spacing;
  std::vector<int> points_per_dim;
  std::vector<int> od_of_dim;   // owning OD index
  std::vector<int> path_of_dim; // path index within the OD pair
};

// Per-thread scratch for the grid scan. The hot loop must not allocate, and
// every mutable buffer lives in one cache-line-aligned slab rounded up to
// whole lines: a thread's stores then never touch a line that other threads
// read (the shared problem data), which otherwise serializes the scan.
class ScanWorkspace {
 public:
  explicit ScanWorkspace(const PathSpaceProblem& problem) {
    od_count_ = problem.od.size();
    path_offset_.assign(od_count_ + 1, 0);
    for (std::size_t i = 0; i < od_count_; ++i) {
      path_offset_[i + 1] = path_offset_[i] + problem.od[i].paths.size();
    }
    edge_count_ = static_cast<std::size_t>(problem.net->edge_count());

    constexpr std::size_t kLine = 64 / sizeof(double);
    auto round_up = [](std::size_t n) {
      return ((n + kLine - 1) / kLine) * kLine;
    };
    const std::size_t flows_size = round_up(path_offset_[od_count_]);
    const std::size_t sums_size = round_up(od_count_);
    const std::size_t edges_size = round_up(edge_count_);
    slab_.reset(static_cast<double*>(::operator new[](
        (flows_size + sums_size + edges_size) * sizeof(double),
        std::align_val_t(64))));
    path_flow_ = slab_.get();
    free_sum_ = path_flow_ + flows_size;
    edge_flow_ = free_sum_ + sums_size;
  }

  double& path_flow(std::size_t od, std::size_t path) {
    return path_flow_[path_offset_[od] + path];
  }
  double& last_path_flow(std::size_t od) {
    return path_flow_[path_offset_[od + 1] - 1];
  }
  double* free_sum() { return free_sum_; }
  double* edge_flow() { return edge_flow_; }
  std::size_t od_count() const { return od_count_; }
  std::size_t edge_count() const { return edge_count_; }

  std::vector<std::vector<double>> to_nested(
      const PathSpaceProblem& problem) {
    std::vector<std::vector<double>> out(od_count_);
    for (std::size_t i = 0; i < od_count_; ++i) {
      out[i].assign(problem.od[i].paths.size(), 0.0);
      for (std::size_t p = 0; p < out[i].size(); ++p) {
        out[i][p] = path_flow(i, p);
      }
    }
    return out;
  }

 private:
  struct AlignedDelete {
    void operator()(double* p) const {
      ::operator delete[](p, std::align_val_t(64));
    }
  };

  std::unique_ptr<double[], AlignedDelete> slab_;
  double* path_flow_ = nullptr;
  double* free_sum_ = nullptr;
  double* edge_flow_ = nullptr;
  std::vector<std::size_t> path_offset_;
  std::size_t od_count_ = 0;
  std::size_t edge_count_ = 0;
};

// Decodes a flat grid index into ws path flows; returns false when the point
// leaves its simplex (free flows exceeding the demand).
bool decode_point(const PathSpaceProblem& problem, const GridGeometry& geom,
                  std::uint64_t flat, ScanWorkspace& ws) {
  for (std::size_t i = 0; i < ws.od_count(); ++i) ws.free_sum()[i] = 0.0;
  for (std::size_t dim = 0; dim < geom.lo.size(); ++dim) {
    const int idx = static_cast<int>(flat % geom.points_per_dim[dim]);
    flat /= geom.points_per_dim[dim];
    const double v = geom.lo[dim] + geom.spacing[dim] * idx;
    ws.path_flow(geom.od_of_dim[dim], geom.path_of_dim[dim]) = v;
    ws.free_sum()[geom.od_of_dim[dim]] += v;
  }
  for (std::size_t i = 0; i < ws.od_count(); ++i) {
    const double rest = problem.od[i].demand - ws.free_sum()[i];
    if (rest < -1e-12) return false;
    ws.last_path_flow(i) = std::max(rest, 0.0);
  }
  return true;
}

double eval_point(const PathSpaceProblem& problem, ScanWorkspace& ws) {
  const Network& net = *problem.net;
  double* edge_flow = ws.edge_flow();
  std::fill(edge_flow, edge_flow + ws.edge_count(), 0.0);
  for (std::size_t i = 0; i < ws.od_count(); ++i) {
    for (std::size_t p = 0; p < problem.od[i].paths.size(); ++p) {
      for (int e : problem.od[i].paths[p]) {
        edge_flow[e] += ws.path_flow(i, p);
      }
    }
  }
  double total = 0.0;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (problem.objective == PathSpaceProblem::Objective::Deterministic) {
      total += edge_cost_term(edge_flow[e], net.edges[e].a, net.edges[e].b);
    } else {
      total += expected_edge_cost(edge_flow[e], problem.beta, net.edges[e].a,
                                  net.edges[e].b);
    }
  }
  return total;
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
  bool found = false;

  void offer(double value_in, std::uint64_t index_in) {
    if (!found || value_in < value ||
        (value_in == value && index_in < index)) {
      value = value_in;
      index = index_in;
      found = true;
    }
  }
  // Total order on (value, index); merging thread-local bests in any order
  // yields the same winner.
  void merge(const Best& other) {
    if (other.found) offer(other.value, other.index);
  }
};

Best scan_grid(const PathSpaceProblem& problem, const GridGeometry& geom,
               std::uint64_t total, Execution exec) {
  Best best;
  if (exec == Execution::Parallel) {
#pragma omp parallel
    {
      Best local;
      ScanWorkspace ws(problem);
      // Dynamic scheduling absorbs load jitter; the (value, index) merge is
      // scheduling-independent, so results stay exact.
#pragma omp for nowait schedule(dynamic, 16384)
      for (std::int64_t flat = 0; flat < static_cast<std::int64_t>(total);
           ++flat) {
        if (decode_point(problem, geom, flat, ws)) {
          local.offer(eval_point(problem, ws), flat);
        }
      }
#pragma omp critical
      best.merge(local);
    }
  } else {
    Best local;
    ScanWorkspace ws(problem);
    for (std::uint64_t flat = 0; flat < total; ++flat) {
      if (decode_point(problem, geom, flat, ws)) {
        local.offer(eval_point(problem, ws), flat);
      }
    }
    best.merge(local);
  }
  return best;
}

}  // namespace

GridResult grid_minimize(const PathSpaceProblem& problem, int resolution,
                         Execution exec, std::uint64_t point_cap) {
  if (resolution < 1) throw ValidationError("grid resolution must be >= 1");
  if (problem.od.empty()) {
    // No demand: the unique feasible point is the zero flow.
    GridResult result;
    result.edge_flows.assign(problem.net->edge_count(), 0.0);
    result.objective = path_space_cost(problem, {});
    return result;
  }

  GridGeometry geom;
  for (std::size_t i = 0; i < problem.od.size(); ++i) {
    for (std::size_t p = 0; p + 1 < problem.od[i].paths.size(); ++p) {
      geom.od_of_dim.push_back(static_cast<int>(i));
      geom.path_of_dim.push_back(static_cast<int>(p));
      geom.lo.push_back(0.0);
      geom.spacing.push_back(problem.od[i].demand / resolution);
      geom.points_per_dim.push_back(resolution + 1);
    }
  }
  const std::size_t dims = geom.lo.size();
  if (dims > 6) {
    throw ValidationError("path-space grid capped at 6 free dimensions");
  }

  auto total_points = [&]() {
    std::uint64_t total = 1;
    for (int p : geom.points_per_dim) {
      total *= static_cast<std::uint64_t>(p);
      if (total > point_cap) {
        throw ValidationError("path-space grid exceeds the point cap");
      }
    }
    return total;
  };

  Best best = scan_grid(problem, geom, total_points(), exec);
  ScanWorkspace decode_ws(problem);
  decode_point(problem, geom, best.index, decode_ws);
  std::vector<std::vector<double>> best_point = decode_ws.to_nested(problem);

  // Three refinement rounds: re-grid +-1 old spacing around the incumbent
  // with 20 intervals, shrinking the spacing tenfold per round.
  for (int round = 0; round < 3 && dims > 0; ++round) {
    for (std::size_t dim = 0; dim < dims; ++dim) {
      const double center =
          best_point[geom.od_of_dim[dim]][geom.path_of_dim[dim]];
      const double h = geom.spacing[dim];
      const double demand = problem.od[geom.od_of_dim[dim]].demand;
      const double lo = std::max(0.0, center - h);
      const double hi = std::min(demand, center + h);
      geom.lo[dim] = lo;
      geom.spacing[dim] = (hi - lo) / 20.0;
      geom.points_per_dim[dim] = 21;
    }
    Best refined = scan_grid(problem, geom, total_points(), exec);
    if (refined.found && refined.value <= best.value) {
      best = refined;
      decode_point(problem, geom, best.index, decode_ws);
      best_point = decode_ws.to_nested(problem);
    }
  }

  GridResult result;
  result.path_flows = best_point;
  result.objective = best.value;
  result.edge_flows.assign(problem.net->edge_count(), 0.0);
  for (std::size_t i = 0; i < problem.od.size(); ++i) {
    for (std::size_t p = 0; p < problem.od[i].paths.size(); ++p) {
      for (int e : problem.od[i].paths[p]) {
        result.edge_flows[e] += best_point[i][p];
      }
    }
  }
  return result;
}

McEstimate monte_carlo_expected_cost(const FlowVector& x,
                                     const CostParams& params,
                                     const NoiseModel& noise, std::uint64_t n,
                                     Rng& gen, Execution exec) {
  if (n < 1) throw ValidationError("sample count must be >= 1");
  noise.validate(static_cast<int>(x.size()));
  const std::uint64_t master = gen.next_u64();
  auto sample = [&x, &params, &noise](Rng& local) {
    thread_local std::vector<double> z, u;
    sample_noise_into(x, noise, local, z, u);
    double total = 0.0;
    for (std::size_t e = 0; e < x.size(); ++e) {
      const double f = std::max(x[e] + z[e], 0.0);
      total += edge_cost_term(f, params.a[e], params.b[e]);
    }
    return total;
  };
  return mc_estimate(n, master, sample, exec);
}

double stationarity_residual(const FlowVector& x, const Network& net,
                             double beta) {
  if (net.demands.size() != 1) {
    throw ValidationError(
        "stationarity residual needs exactly one demand pair");
  }
  const Demand& d = net.demands.front();
  const auto paths = enumerate_simple_paths(net, d.origin, d.dest, 100);
  if (paths.size() != 2) {
    throw ValidationError("stationarity residual needs exactly two paths");
  }
  std::vector<char> used(net.edge_count(), 0);
  for (const auto& path : paths) {
    for (int e : path) {
      if (used[e]) {
        throw ValidationError(
            "stationarity residual needs edge-disjoint paths");
      }
      used[e] = 1;
    }
  }
  if (static_cast<int>(x.size()) != net.edge_count()) {
    throw ValidationError("flow dimension does not match edge count");
  }

  double marginal[2] = {0.0, 0.0};
  for (int p = 0; p < 2; ++p) {
    for (int e : paths[p]) {
      marginal[p] +=
          expected_edge_marginal(x[e], beta, net.edges[e].a, net.edges[e].b);
    }
  }
  return std::abs(marginal[0] - marginal[1]);
}

}  // namespace tassign::oracle
