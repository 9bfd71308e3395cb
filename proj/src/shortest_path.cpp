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

#include "tassign/shortest_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace tassign {

ShortestPathTree dijkstra(const Network& net, const CostVector& costs,
                          int origin) {
  if (static_cast<int>(costs.size()) != net.edge_count()) {
    throw ValidationError("cost vector dimension does not match edge count");
  }
  for (double c : costs) {
    if (c < 0.0) throw ValidationError("negative link cost");
  }
  if (origin < 0 || origin >= net.node_count()) {
    throw ValidationError("origin node index out of range");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  ShortestPathTree tree;
  tree.origin = origin;
  tree.dist.assign(net.node_count(), kInf);
  tree.pred_edge.assign(net.node_count(), -1);
  tree.dist[origin] = 0.0;

  // (distance, node) min-heap; equal distances pop the smaller node index.
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.emplace(0.0, origin);
  std::vector<char> done(net.node_count(), 0);

  while (!heap.empty()) {
    auto [du, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (int e : net.out_edges[u]) {
      const int v = net.edges[e].head;
      const double dv = du + costs[e];
      if (dv < tree.dist[v]) {
        tree.dist[v] = dv;
        tree.pred_edge[v] = e;
        heap.emplace(dv, v);
      } else if (!done[v] && dv == tree.dist[v] && tree.pred_edge[v] >= 0 &&
                 e < tree.pred_edge[v]) {
        // Tie: keep the smaller edge index. Restricted to unfinalized nodes
        // so zero-cost cycles cannot enter the predecessor chain.
        tree.pred_edge[v] = e;
      }
    }
  }
  return tree;
}

AonResult all_or_nothing(const Network& net, const CostVector& costs) {
  AonResult result;
  result.flow.assign(net.edge_count(), 0.0);

  // One tree per distinct origin, origins in ascending node index; demands
  // of an origin keep their file order in the assignment.
  std::vector<std::vector<const Demand*>> by_origin(net.node_count());
  for (const Demand& d : net.demands) by_origin[d.origin].push_back(&d);

  for (int origin = 0; origin < net.node_count(); ++origin) {
    if (by_origin[origin].empty()) continue;
    const ShortestPathTree tree = dijkstra(net, costs, origin);
    for (const Demand* d : by_origin[origin]) {
      if (!std::isfinite(tree.dist[d->dest])) {
        throw SolverError("demand " + net.node_names[d->origin] + " -> " +
                          net.node_names[d->dest] +
                          " is unreachable under current costs");
      }
      PathEntry entry;
      entry.origin = d->origin;
      entry.dest = d->dest;
      entry.demand = d->rate;
      for (int v = d->dest; v != origin;) {
        const int e = tree.pred_edge[v];
        entry.edges.push_back(e);
        v = net.edges[e].tail;
      }
      std::reverse(entry.edges.begin(), entry.edges.end());
      for (int e : entry.edges) result.flow[e] += d->rate;
      result.assignment.entries.push_back(std::move(entry));
    }
  }
  return result;
}

}  // namespace tassign
