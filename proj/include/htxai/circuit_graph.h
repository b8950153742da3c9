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

#ifndef HTXAI_CIRCUIT_GRAPH_H_
#define HTXAI_CIRCUIT_GRAPH_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "htxai/netlist.h"

namespace htxai {

enum class NodeKind { kPrimaryInput, kGate, kPrimaryOutput };

struct GraphNode {
  NodeKind kind = NodeKind::kGate;
  // Instance name for gates, port net name for pseudo-nodes.
  std::string name;
  // Net driven by this node (gates, PIs) or observed by it (POs).
  std::string net;
  std::string cell_type;
  int source_line = 0;
  bool is_ff = false;
  bool is_pi = false;
  bool is_po = false;
  // One entry per connected input pin, so duplicates are possible.
  std::vector<int> fanin;
  std::vector<int> fanout;
};

// Directed gate-level graph. Immutable once built.
class CircuitGraph {
 public:
  const std::string& name() const { return name_; }
  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const GraphNode& node(int id) const { return nodes_[id]; }
  std::size_t edge_count() const { return edge_count_; }

  // Node driving `net` (a gate or a PI pseudo-node).
  std::optional<int> Driver(std::string_view net) const;
  bool HasNet(std::string_view net) const { return Driver(net).has_value(); }
  // True when `net` is bound to a primary output.
  bool IsPrimaryOutputNet(std::string_view net) const;

  // All nodes, flip-flop output edges removed, Kahn order with ties broken
  // by (net name, node id).
  const std::vector<int>& topological_order() const { return topo_order_; }

  std::vector<int> GateNodes() const;

 private:
  friend CircuitGraph BuildGraph(const Netlist&, const CellLibrary&);

  std::string name_;
  std::vector<GraphNode> nodes_;
  std::unordered_map<std::string, int> driver_;
  std::set<std::string, std::less<>> po_nets_;
  std::vector<int> topo_order_;
  std::size_t edge_count_ = 0;
};

// Throws kCombinationalCycle (message lists the cycle's nets) when a cycle
// survives removal of the flip-flop nodes.
CircuitGraph BuildGraph(const Netlist& netlist, const CellLibrary& library);

// Ground-truth labels applied to one circuit. Unknown nets are reported,
// never dropped silently.
struct LabelReport {
  std::set<std::string> trojan_nets;
  std::vector<std::string> unknown_nets;
};
LabelReport ResolveLabels(const CircuitGraph& graph,
                          const std::set<std::string>& labeled_nets);

}  // namespace htxai

#endif  // HTXAI_CIRCUIT_GRAPH_H_
