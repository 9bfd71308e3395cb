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

#include <cstddef>
#include <string>
#include <vector>

#include "tassign/errors.hpp"

namespace tassign {

/// Per-edge flow in edge-list order. Plain data; solvers keep every entry
/// nonnegative and the dimension equal to the edge count.
using FlowVector = std::vector<double>;

/// Per-edge traversal cost in edge-list order.
using CostVector = std::vector<double>;

struct Edge {
  int tail = -1;
  int head = -1;
  double a = 0.0;  // free-flow cost coefficient
  double b = 0.0;  // congestion coefficient (cost per flow^4)
};

/// One positive origin-destination demand. Zero-rate entries are dropped at
/// parse time; the demand matrix is stored sparsely.
struct Demand {
  int origin = -1;
  int dest = -1;
  double rate = 0.0;
};

/// Cost parameters of all edges as parallel vectors (edge-list order).
struct CostParams {
  std::vector<double> a;
  std::vector<double> b;
};

/// Directed road network: nodes, edges with cost parameters, and the sparse
/// demand list. Immutable after construction (parse_network validates all
/// invariants), hence safe to share across threads.
///
/// Node identifiers are arbitrary strings mapped to dense indices in file
/// order; all vectors in the library are indexed in edge-list (file) order.
struct Network {
  std::vector<std::string> node_names;
  std::vector<Edge> edges;
  std::vector<Demand> demands;
  std::vector<std::vector<int>> out_edges;  // per node, ascending edge index

  int node_count() const { return static_cast<int>(node_names.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  /// Dense index for a node name, or -1 if unknown.
  int node_index(const std::string& name) const;

  CostParams cost_params() const;

  double total_demand() const;
};

/// Parses the line-oriented network format:
///
///   NODES A B C D
///   # EDGE tail head a b
///   EDGE A B 0.3 0.6
///   DEMAND A D 1.0
///
/// `#` starts a comment; blank lines are ignored. Throws ParseError with the
/// offending line number, or ValidationError naming the violated invariant
/// (duplicate edge, negative parameter, demand between identical nodes,
/// duplicate demand pair, unreachable positive demand).
Network parse_network(const std::string& text);

/// parse_network on the contents of `path`.
Network load_network(const std::string& path);

/// Inverse of parse_network up to comments and blank lines; numbers are
/// written in shortest round-trip form so parse(serialize(net)) == net.
std::string serialize_network(const Network& net);

/// One routed OD pair: the full edge sequence and the demand assigned to it.
struct PathEntry {
  int origin = -1;
  int dest = -1;
  double demand = 0.0;
  std::vector<int> edges;  // edge indices, tail-to-head order
};

struct PathAssignment {
  std::vector<PathEntry> entries;
};

/// Edge flows induced by an assignment: entry e is the sum of the demands of
/// all paths traversing e. Validates that each path exists in the network,
/// is simple, and connects its origin to its destination.
FlowVector induced_edge_flow(const PathAssignment& assignment,
                             const Network& net);

/// Flow-conservation diagnostic. For each node, the net outflow of `x` is
/// compared against sum_j D_ij - sum_j D_ji; the check passes when every
/// residual is within tol * max(1, total demand).
struct BalanceReport {
  bool pass = true;
  double max_residual = 0.0;
  std::vector<double> net_outflow;  // computed from x
  std::vector<double> expected;     // from the demand matrix
  std::vector<double> residual;     // |net_outflow - expected|
};

BalanceReport check_balance(const FlowVector& x, const Network& net,
                            double tol);

/// All simple directed paths origin -> dest as edge-index lists, in
/// lexicographic edge-index order. Throws ValidationError when more than
/// `cap` paths exist. Desk-scale diagnostic; the solvers never call this.
std::vector<std::vector<int>> enumerate_simple_paths(const Network& net,
                                                     int origin, int dest,
                                                     std::size_t cap);

/// Diameter of the feasible aggregate-flow polytope:
/// 2 * sqrt(sum_e K_e^2) where K_e is the total demand of all OD pairs with
/// at least one path through edge e. Any two feasible flows differ in
/// Euclidean norm by at most this value.
double diameter_bound(const Network& net, std::size_t path_cap = 10000);

/// Per-edge flow upper bounds K_e (see diameter_bound). Shared by the
/// Lipschitz estimate.
std::vector<double> edge_flow_bounds(const Network& net,
                                     std::size_t path_cap = 10000);

/// max_e |x_new[e] - x_old[e]| / max(x_old[e], eps); edges below eps in both
/// iterates are skipped. This is the solvers' stopping quantity.
double max_relative_change(const FlowVector& x_old, const FlowVector& x_new,
                           double eps = 1e-12);

}  // namespace tassign
