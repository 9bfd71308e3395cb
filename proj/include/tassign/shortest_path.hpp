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

#include "tassign/network.hpp"

namespace tassign {

struct ShortestPathTree {
  int origin = -1;
  std::vector<double> dist;    // +inf when unreachable
  std::vector<int> pred_edge;  // -1 at the origin and unreachable nodes
};

/// Dijkstra over nonnegative link costs with deterministic tie-breaking:
/// node extraction ties go to the smaller node index, and among equal-length
/// incoming edges the smaller edge index becomes the predecessor. Throws on
/// negative costs.
ShortestPathTree dijkstra(const Network& net, const CostVector& costs,
                          int origin);

struct AonResult {
  FlowVector flow;
  PathAssignment assignment;
};

/// All-or-nothing assignment: the entire demand of every OD pair rides its
/// single shortest path under `costs`. One Dijkstra per distinct origin.
/// The result is a vertex of the feasible polytope and minimizes the
/// linearized objective c . y over it. Throws SolverError when a positive
/// demand is unreachable.
AonResult all_or_nothing(const Network& net, const CostVector& costs);

}  // namespace tassign
