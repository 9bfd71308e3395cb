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

#include <cmath>

#include "doctest.h"
#include "tassign/network.hpp"
#include "test_helpers.hpp"

using namespace tassign;
using namespace tassign::testing;

TEST_CASE("parse_network reads the example file") {
  const Network net = fig1();
  CHECK(net.node_count() == 4);
  CHECK(net.edge_count() == 4);
  CHECK(net.node_names == std::vector<std::string>{"A", "B", "C", "D"});

  const CostParams p = net.cost_params();
  CHECK(p.a == std::vector<double>{0.3, 0.3, 0.5, 0.5});
  CHECK(p.b == std::vector<double>{0.6, 0.6, 0.1, 0.1});

  REQUIRE(net.demands.size() == 1);
  CHECK(net.demands[0].origin == 0);
  CHECK(net.demands[0].dest == 3);
  CHECK(net.demands[0].rate == 1.0);

  CHECK(net.out_edges[0] == std::vector<int>{0, 2});
  CHECK(net.out_edges[3].empty());
}

TEST_CASE("zero demand rows leave the demand set empty") {
  const Network net = parse_network(
      "NODES A B\nEDGE A B 1 0\nDEMAND A B 0.0\n");
  CHECK(net.demands.empty());
}

TEST_CASE("parse_network rejects invalid input") {
  CHECK_THROWS_AS(parse_network("NODES A B\nEDGE A B 1 1\nEDGE A B 2 2\n"),
                  ValidationError);  // duplicate edge
  CHECK_THROWS_AS(parse_network("NODES A B\nEDGE A B -0.1 1\n"),
                  ValidationError);  // negative parameter
  CHECK_THROWS_AS(parse_network("NODES A B\nEDGE A B 1 1\nDEMAND A A 1\n"),
                  ValidationError);  // self demand
  CHECK_THROWS_AS(
      parse_network("NODES A B\nEDGE A B 1 1\nDEMAND A B 1\nDEMAND A B 2\n"),
      ValidationError);  // duplicate demand pair
  CHECK_THROWS_AS(parse_network("NODES A B\nEDGE B A 1 1\nDEMAND A B 1\n"),
                  ValidationError);  // unreachable demand
  CHECK_THROWS_AS(parse_network("NODES A B\nEDGE A C 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_network("EDGE A B 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_network("NODES A B\nEDGE A B one 1\n"), ParseError);
  CHECK_THROWS_AS(parse_network("NODES A B\nFOO A B\n"), ParseError);
  CHECK_THROWS_AS(parse_network(""), ParseError);

  try {
    parse_network("NODES A B\nEDGE A B 1 1\nEDGE A x 1 1\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("induced_edge_flow accumulates path demands") {
  const Network net = fig1();

  PathAssignment upper;
  upper.entries.push_back({0, 3, 1.0, {0, 1}});
  CHECK(induced_edge_flow(upper, net) == FlowVector{1.0, 1.0, 0.0, 0.0});

  CHECK(induced_edge_flow({}, net) == FlowVector{0.0, 0.0, 0.0, 0.0});

  // Two half-demand assignments sum to the split flow (additivity).
  PathAssignment half_upper, half_lower;
  half_upper.entries.push_back({0, 3, 0.5, {0, 1}});
  half_lower.entries.push_back({0, 3, 0.5, {2, 3}});
  const FlowVector a = induced_edge_flow(half_upper, net);
  const FlowVector b = induced_edge_flow(half_lower, net);
  FlowVector sum(4);
  for (int e = 0; e < 4; ++e) sum[e] = a[e] + b[e];
  CHECK(sum == FlowVector{0.5, 0.5, 0.5, 0.5});

  PathAssignment both;
  both.entries = {half_upper.entries[0], half_lower.entries[0]};
  CHECK(induced_edge_flow(both, net) == sum);
  CHECK(check_balance(sum, net, 1e-9).pass);
}

TEST_CASE("induced_edge_flow validates paths") {
  const Network net = fig1();
  PathAssignment bad;

  bad.entries = {{0, 3, 1.0, {0, 7}}};  // unknown edge
  CHECK_THROWS_AS(induced_edge_flow(bad, net), ValidationError);

  bad.entries = {{0, 3, 1.0, {0, 3}}};  // disconnected: A->B then C->D
  CHECK_THROWS_AS(induced_edge_flow(bad, net), ValidationError);

  bad.entries = {{0, 3, 1.0, {0}}};  // stops at B
  CHECK_THROWS_AS(induced_edge_flow(bad, net), ValidationError);
}

TEST_CASE("check_balance matches net outflow against demands") {
  const Network net = fig1();

  const BalanceReport ok = check_balance({0.5, 0.5, 0.5, 0.5}, net, 1e-9);
  CHECK(ok.pass);
  CHECK(ok.expected == std::vector<double>{1.0, 0.0, 0.0, -1.0});
  CHECK(ok.max_residual == 0.0);

  const BalanceReport bad = check_balance({1.0, 0.0, 0.0, 0.0}, net, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual[1] == 1.0);  // node B keeps the truncated flow

  const Network empty = parse_network("NODES A B\nEDGE A B 1 1\n");
  CHECK(check_balance({0.0}, empty, 1e-9).pass);

  CHECK_THROWS_AS(check_balance({1.0}, net, 1e-9), ValidationError);
}

TEST_CASE("enumerate_simple_paths lists paths in edge-index order") {
  const Network net = fig1();
  const auto paths = enumerate_simple_paths(net, 0, 3, 100);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0] == std::vector<int>{0, 1});
  CHECK(paths[1] == std::vector<int>{2, 3});

  CHECK(enumerate_simple_paths(net, 3, 0, 100).empty());
  CHECK_THROWS_AS(enumerate_simple_paths(net, 0, 3, 1), ValidationError);
}

TEST_CASE("diameter_bound follows the demand-weighted path sets") {
  // Every edge of the example lies on a path of the unit OD pair, so each
  // K_e = 1 and the bound is 2 sqrt(4) = 4.
  CHECK(diameter_bound(fig1()) == doctest::Approx(4.0).epsilon(1e-12));

  const Network no_demand = parse_network("NODES A B\nEDGE A B 1 1\n");
  CHECK(diameter_bound(no_demand) == 0.0);

  // Two parallel 2-edge paths with demand 2: K_e = 2 on 4 edges,
  // 2 sqrt(4 * 4) = 8.
  const Network parallel = parse_network(
      "NODES A B C D\nEDGE A B 1 1\nEDGE B D 1 1\nEDGE A C 1 1\n"
      "EDGE C D 1 1\nDEMAND A D 2\n");
  CHECK(diameter_bound(parallel) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("feasible flows stay within the diameter bound") {
  const Network net = fig1();
  const double bound = diameter_bound(net);
  Rng gen(11);
  for (int i = 0; i < 100; ++i) {
    const FlowVector x = fig1_flows(gen.next_unit());
    const FlowVector y = fig1_flows(gen.next_unit());
    double norm_sq = 0.0;
    for (int e = 0; e < 4; ++e) norm_sq += (x[e] - y[e]) * (x[e] - y[e]);
    CHECK(std::sqrt(norm_sq) <= bound);
  }
}

TEST_CASE("serialize then parse is the identity") {
  const Network net = fig1();
  const Network round = parse_network(serialize_network(net));
  CHECK(round.node_names == net.node_names);
  REQUIRE(round.edge_count() == net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) {
    CHECK(round.edges[e].tail == net.edges[e].tail);
    CHECK(round.edges[e].head == net.edges[e].head);
    CHECK(round.edges[e].a == net.edges[e].a);
    CHECK(round.edges[e].b == net.edges[e].b);
  }
  REQUIRE(round.demands.size() == net.demands.size());
  CHECK(round.demands[0].rate == net.demands[0].rate);

  // Awkward doubles survive the round trip bit-for-bit.
  const Network odd = parse_network(
      "NODES A B\nEDGE A B 0.30000000000000004 1e-17\nDEMAND A B 0.1\n");
  const Network odd_round = parse_network(serialize_network(odd));
  CHECK(odd_round.edges[0].a == odd.edges[0].a);
  CHECK(odd_round.edges[0].b == odd.edges[0].b);
  CHECK(odd_round.demands[0].rate == odd.demands[0].rate);
}

TEST_CASE("max_relative_change applies the epsilon rule") {
  CHECK(max_relative_change({1.0, 1.0}, {1.0, 1.0}) == 0.0);
  CHECK(max_relative_change({1.0, 2.0}, {1.1, 2.0}) ==
        doctest::Approx(0.1).epsilon(1e-12));
  // Both below epsilon: skipped entirely.
  CHECK(max_relative_change({0.0, 1.0}, {0.0, 1.0}) == 0.0);
  // Leaving zero is measured against epsilon itself.
  CHECK(max_relative_change({0.0}, {0.2}) ==
        doctest::Approx(0.2 / 1e-12).epsilon(1e-9));
}
