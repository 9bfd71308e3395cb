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

#include "tassign/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tassign/util.hpp"

namespace tassign {

int Network::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < node_names.size(); ++i) {
    if (node_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CostParams Network::cost_params() const {
  CostParams p;
  p.a.reserve(edges.size());
  p.b.reserve(edges.size());
  for (const Edge& e : edges) {
    p.a.push_back(e.a);
    p.b.push_back(e.b);
  }
  return p;
}

double Network::total_demand() const {
  double total = 0.0;
  for (const Demand& d : demands) total += d.rate;
  return total;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, int line_no, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("expected ") + what + ", got '" +
                                  tok + "'");
  }
  if (pos != tok.size()) {
    throw ParseError(line_no, std::string("trailing characters in ") + what +
                                  " '" + tok + "'");
  }
  return v;
}

// True when dest is reachable from origin ignoring costs.
bool reachable(const Network& net, int origin, int dest) {
  std::vector<char> seen(net.node_count(), 0);
  std::deque<int> queue{origin};
  seen[origin] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == dest) return true;
    for (int e : net.out_edges[u]) {
      int v = net.edges[e].head;
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace

Network parse_network(const std::string& text) {
  Network net;
  std::unordered_map<std::string, int> node_of;
  std::set<std::pair<int, int>> edge_pairs;
  std::set<std::pair<int, int>> demand_pairs;
  bool saw_nodes = false;

  std::istringstream input(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(input, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;

    const std::string& kind = tok[0];
    if (kind == "NODES") {
      if (saw_nodes) throw ParseError(line_no, "repeated NODES line");
      if (tok.size() < 2) throw ParseError(line_no, "NODES line names no nodes");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!node_of.emplace(tok[i], static_cast<int>(net.node_names.size()))
                 .second) {
          throw ParseError(line_no, "duplicate node name '" + tok[i] + "'");
        }
        net.node_names.push_back(tok[i]);
      }
      saw_nodes = true;
    } else if (kind == "EDGE") {
      if (!saw_nodes) throw ParseError(line_no, "EDGE before NODES");
      if (tok.size() != 5) {
        throw ParseError(line_no, "EDGE expects: EDGE tail head a b");
      }
      auto tail = node_of.find(tok[1]);
      auto head = node_of.find(tok[2]);
      if (tail == node_of.end()) {
        throw ParseError(line_no, "unknown node '" + tok[1] + "'");
      }
      if (head == node_of.end()) {
        throw ParseError(line_no, "unknown node '" + tok[2] + "'");
      }
      Edge e;
      e.tail = tail->second;
      e.head = head->second;
      e.a = parse_number(tok[3], line_no, "cost parameter a");
      e.b = parse_number(tok[4], line_no, "cost parameter b");
      if (e.a < 0.0 || e.b < 0.0) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": negative cost parameter on edge " + tok[1] +
                              " -> " + tok[2]);
      }
      if (!edge_pairs.emplace(e.tail, e.head).second) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": duplicate edge " + tok[1] + " -> " + tok[2]);
      }
      net.edges.push_back(e);
    } else if (kind == "DEMAND") {
      if (!saw_nodes) throw ParseError(line_no, "DEMAND before NODES");
      if (tok.size() != 4) {
        throw ParseError(line_no, "DEMAND expects: DEMAND origin destination rate");
      }
      auto origin = node_of.find(tok[1]);
      auto dest = node_of.find(tok[2]);
      if (origin == node_of.end()) {
        throw ParseError(line_no, "unknown node '" + tok[1] + "'");
      }
      if (dest == node_of.end()) {
        throw ParseError(line_no, "unknown node '" + tok[2] + "'");
      }
      double rate = parse_number(tok[3], line_no, "demand rate");
      if (rate < 0.0) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": negative demand " + tok[1] + " -> " + tok[2]);
      }
      if (!demand_pairs.emplace(origin->second, dest->second).second) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": duplicate demand pair " + tok[1] + " -> " +
                              tok[2]);
      }
      if (rate == 0.0) continue;  // demands are stored sparsely
      if (origin->second == dest->second) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": demand from node '" + tok[1] + "' to itself");
      }
      net.demands.push_back({origin->second, dest->second, rate});
    } else {
      throw ParseError(line_no, "unknown directive '" + kind + "'");
    }
  }
  if (!saw_nodes) throw ParseError(line_no, "missing NODES line");

  net.out_edges.assign(net.node_count(), {});
  for (int e = 0; e < net.edge_count(); ++e) {
    net.out_edges[net.edges[e].tail].push_back(e);
  }

  for (const Demand& d : net.demands) {
    if (!reachable(net, d.origin, d.dest)) {
      throw ValidationError("demand " + net.node_names[d.origin] + " -> " +
                            net.node_names[d.dest] +
                            " has no directed path");
    }
  }
  return net;
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open network file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string serialize_network(const Network& net) {
  std::ostringstream out;
  out << "NODES";
  for (const std::string& n : net.node_names) out << ' ' << n;
  out << '\n';
  for (const Edge& e : net.edges) {
    out << "EDGE " << net.node_names[e.tail] << ' ' << net.node_names[e.head]
        << ' ' << format_double(e.a) << ' ' << format_double(e.b) << '\n';
  }
  for (const Demand& d : net.demands) {
    out << "DEMAND " << net.node_names[d.origin] << ' '
        << net.node_names[d.dest] << ' ' << format_double(d.rate) << '\n';
  }
  return out.str();
}

FlowVector induced_edge_flow(const PathAssignment& assignment,
                             const Network& net) {
  FlowVector flow(net.edge_count(), 0.0);
  for (const PathEntry& entry : assignment.entries) {
    if (entry.demand < 0.0) {
      throw ValidationError("negative demand in path assignment");
    }
    int at = entry.origin;
    std::vector<char> visited(net.node_count(), 0);
    if (at < 0 || at >= net.node_count()) {
      throw ValidationError("path origin out of range");
    }
    visited[at] = 1;
    for (int e : entry.edges) {
      if (e < 0 || e >= net.edge_count()) {
        throw ValidationError("path references unknown edge index " +
                              std::to_string(e));
      }
      if (net.edges[e].tail != at) {
        throw ValidationError("path is not connected at edge index " +
                              std::to_string(e));
      }
      at = net.edges[e].head;
      if (visited[at]) {
        throw ValidationError("path revisits node '" + net.node_names[at] +
                              "'");
      }
      visited[at] = 1;
      flow[e] += entry.demand;
    }
    if (at != entry.dest) {
      throw ValidationError("path does not end at its destination");
    }
  }
  return flow;
}

BalanceReport check_balance(const FlowVector& x, const Network& net,
                            double tol) {
  if (static_cast<int>(x.size()) != net.edge_count()) {
    throw ValidationError("flow dimension does not match edge count");
  }
  BalanceReport report;
  report.net_outflow.assign(net.node_count(), 0.0);
  report.expected.assign(net.node_count(), 0.0);
  report.residual.assign(net.node_count(), 0.0);
  for (int e = 0; e < net.edge_count(); ++e) {
    report.net_outflow[net.edges[e].tail] += x[e];
    report.net_outflow[net.edges[e].head] -= x[e];
  }
  for (const Demand& d : net.demands) {
    report.expected[d.origin] += d.rate;
    report.expected[d.dest] -= d.rate;
  }
  const double scale = std::max(1.0, net.total_demand());
  for (int v = 0; v < net.node_count(); ++v) {
    report.residual[v] = std::abs(report.net_outflow[v] - report.expected[v]);
    report.max_residual = std::max(report.max_residual, report.residual[v]);
  }
  report.pass = report.max_residual <= tol * scale;
  return report;
}

namespace {

void dfs_paths(const Network& net, int at, int dest,
               std::vector<char>& visited, std::vector<int>& stack,
               std::vector<std::vector<int>>& out, std::size_t cap) {
  if (at == dest) {
    if (out.size() >= cap) {
      throw ValidationError("path enumeration exceeds cap of " +
                            std::to_string(cap) + " paths");
    }
    out.push_back(stack);
    return;
  }
  for (int e : net.out_edges[at]) {
    int next = net.edges[e].head;
    if (visited[next]) continue;
    visited[next] = 1;
    stack.push_back(e);
    dfs_paths(net, next, dest, visited, stack, out, cap);
    stack.pop_back();
    visited[next] = 0;
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_simple_paths(const Network& net,
                                                     int origin, int dest,
                                                     std::size_t cap) {
  std::vector<std::vector<int>> paths;
  if (origin < 0 || origin >= net.node_count() || dest < 0 ||
      dest >= net.node_count()) {
    throw ValidationError("path enumeration endpoint out of range");
  }
  std::vector<char> visited(net.node_count(), 0);
  std::vector<int> stack;
  visited[origin] = 1;
  dfs_paths(net, origin, dest, visited, stack, paths, cap);
  return paths;
}

std::vector<double> edge_flow_bounds(const Network& net,
                                     std::size_t path_cap) {
  std::vector<double> bounds(net.edge_count(), 0.0);
  for (const Demand& d : net.demands) {
    auto paths = enumerate_simple_paths(net, d.origin, d.dest, path_cap);
    std::vector<char> touched(net.edge_count(), 0);
    for (const auto& path : paths) {
      for (int e : path) touched[e] = 1;
    }
    for (int e = 0; e < net.edge_count(); ++e) {
      if (touched[e]) bounds[e] += d.rate;
    }
  }
  return bounds;
}

double diameter_bound(const Network& net, std::size_t path_cap) {
  double sum_sq = 0.0;
  for (double k : edge_flow_bounds(net, path_cap)) sum_sq += k * k;
  return 2.0 * std::sqrt(sum_sq);
}

double max_relative_change(const FlowVector& x_old, const FlowVector& x_new,
                           double eps) {
  double worst = 0.0;
  for (std::size_t e = 0; e < x_old.size(); ++e) {
    if (x_old[e] < eps && x_new[e] < eps) continue;
    worst = std::max(worst, std::abs(x_new[e] - x_old[e]) /
                                std::max(x_old[e], eps));
  }
  return worst;
}

}  // namespace tassign
