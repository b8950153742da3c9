// Copyright 2026 The htxai Authors. All Rights Reserved.
//
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

#include "htxai/circuit_graph.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "htxai/error.h"

namespace htxai {

std::optional<int> CircuitGraph::Driver(std::string_view net) const {
  auto it = driver_.find(std::string(net));
  if (it == driver_.end()) return std::nullopt;
  return it->second;
}

bool CircuitGraph::IsPrimaryOutputNet(std::string_view net) const {
  return po_nets_.find(net) != po_nets_.end();
}

std::vector<int> CircuitGraph::GateNodes() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    if (nodes_[i].kind == NodeKind::kGate) out.push_back(i);
  }
  return out;
}

namespace {

// Returns the net names along one combinational cycle among `remaining`.
std::vector<std::string> FindCycle(const std::vector<GraphNode>& nodes,
                                   const std::vector<bool>& remaining) {
  const int n = static_cast<int>(nodes.size());
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<int> stack;
  std::function<bool(int)> dfs = [&](int v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    if (!nodes[v].is_ff) {
      for (int w : nodes[v].fanout) {
        if (!remaining[w] || nodes[w].is_ff) continue;
        if (state[w] == 1) {
          stack.erase(stack.begin(), std::find(stack.begin(), stack.end(), w));
          return true;
        }
        if (state[w] == 0 && dfs(w)) return true;
      }
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (int v = 0; v < n; ++v) {
    if (remaining[v] && !nodes[v].is_ff && state[v] == 0 && dfs(v)) break;
  }
  std::vector<std::string> nets;
  for (int v : stack) nets.push_back(nodes[v].net);
  return nets;
}

}  // namespace

CircuitGraph BuildGraph(const Netlist& netlist, const CellLibrary& library) {
  CircuitGraph g;
  g.name_ = netlist.module_name;
  auto& nodes = g.nodes_;

  for (const auto& pi : netlist.primary_inputs) {
    GraphNode node;
    node.kind = NodeKind::kPrimaryInput;
    node.name = pi;
    node.net = pi;
    node.is_pi = true;
    g.driver_.emplace(pi, static_cast<int>(nodes.size()));
    nodes.push_back(std::move(node));
  }
  for (const auto& inst : netlist.instances) {
    const CellType* cell = library.Find(inst.cell_type);
    if (cell == nullptr) throw Error(ErrorCode::kUnknownCell, inst.cell_type);
    GraphNode node;
    node.kind = NodeKind::kGate;
    node.name = inst.name;
    node.cell_type = inst.cell_type;
    node.source_line = inst.source_line;
    node.is_ff = cell->is_flip_flop;
    node.net = netlist.OutputNet(inst, library);
    if (!g.driver_.emplace(node.net, static_cast<int>(nodes.size())).second) {
      throw Error(ErrorCode::kMultipleDrivers, "net '" + node.net + "'");
    }
    nodes.push_back(std::move(node));
  }
  for (const auto& po : netlist.primary_outputs) {
    GraphNode node;
    node.kind = NodeKind::kPrimaryOutput;
    node.name = po;
    node.net = po;
    node.is_po = true;
    g.po_nets_.insert(po);
    nodes.push_back(std::move(node));
  }

  auto connect = [&](const std::string& net, int sink) {
    auto it = g.driver_.find(net);
    if (it == g.driver_.end()) {
      throw Error(ErrorCode::kUndrivenNet, "net '" + net + "' has no driver");
    }
    nodes[it->second].fanout.push_back(sink);
    nodes[sink].fanin.push_back(it->second);
    ++g.edge_count_;
  };
  const int first_gate = static_cast<int>(netlist.primary_inputs.size());
  for (std::size_t i = 0; i < netlist.instances.size(); ++i) {
    const auto& inst = netlist.instances[i];
    const CellType* cell = library.Find(inst.cell_type);
    for (const auto& [pin, net] : inst.connections) {
      if (pin != cell->output_pin) connect(net, first_gate + static_cast<int>(i));
    }
  }
  const int first_po = first_gate + static_cast<int>(netlist.instances.size());
  for (std::size_t i = 0; i < netlist.primary_outputs.size(); ++i) {
    connect(netlist.primary_outputs[i], first_po + static_cast<int>(i));
  }

  // Kahn's algorithm with flip-flop output edges removed.
  const int n = static_cast<int>(nodes.size());
  std::vector<int> indegree(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int u : nodes[v].fanin) {
      if (!nodes[u].is_ff) ++indegree[v];
    }
  }
  using Key = std::tuple<const std::string*, int>;
  auto cmp = [](const Key& a, const Key& b) {
    const int c = std::get<0>(a)->compare(*std::get<0>(b));
    if (c != 0) return c > 0;
    return std::get<1>(a) > std::get<1>(b);
  };
  std::priority_queue<Key, std::vector<Key>, decltype(cmp)> ready(cmp);
  for (int v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.emplace(&nodes[v].net, v);
  }
  std::vector<bool> remaining(n, true);
  while (!ready.empty()) {
    const int v = std::get<1>(ready.top());
    ready.pop();
    remaining[v] = false;
    g.topo_order_.push_back(v);
    if (nodes[v].is_ff) continue;
    for (int w : nodes[v].fanout) {
      if (--indegree[w] == 0) ready.emplace(&nodes[w].net, w);
    }
  }
  if (static_cast<int>(g.topo_order_.size()) != n) {
    std::string msg = "combinational cycle through nets:";
    for (const auto& net : FindCycle(nodes, remaining)) msg += " " + net;
    throw Error(ErrorCode::kCombinationalCycle, msg);
  }
  return g;
}

LabelReport ResolveLabels(const CircuitGraph& graph,
                          const std::set<std::string>& labeled_nets) {
  LabelReport report;
  for (const auto& net : labeled_nets) {
    auto driver = graph.Driver(net);
    if (driver && graph.node(*driver).kind == NodeKind::kGate) {
      report.trojan_nets.insert(net);
    } else {
      report.unknown_nets.push_back(net);
    }
  }
  return report;
}

}  // namespace htxai
