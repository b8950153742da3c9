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

#ifndef HTXAI_NETLIST_H_
#define HTXAI_NETLIST_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace htxai {

struct CellType {
  std::vector<std::string> input_pins;
  std::string output_pin;
  bool is_flip_flop = false;
  bool is_buffer_or_inverter = false;
};

// Cell-type name -> pin interface. Parsing is library-agnostic; the default
// library is a generic stand-in for vendor standard-cell libraries.
class CellLibrary {
 public:
  // Name of the pseudo-cell used to represent `assign a = b;`.
  static constexpr std::string_view kAssignCell = "$assign";

  CellLibrary() = default;

  // Throws kMalformedLibrary on duplicate names or bad pin lists.
  void Add(const std::string& name, CellType cell);

  const CellType* Find(std::string_view name) const;
  bool Contains(std::string_view name) const { return Find(name) != nullptr; }
  const std::map<std::string, CellType, std::less<>>& entries() const {
    return entries_;
  }

  // {AND,OR,NAND,NOR,XOR,XNOR}{2,3,4}, INV, BUF, MUX2, DFF, plus $assign.
  static CellLibrary Default();

  // JSON: {"cells": {"AND2": {"inputs": ["A","B"], "output": "Y",
  //                            "flip_flop": false, "buffer": false}, ...}}
  static CellLibrary FromJson(std::string_view text);
  static CellLibrary FromFile(const std::string& path);
  std::string ToJson() const;

 private:
  std::map<std::string, CellType, std::less<>> entries_;
};

struct Instance {
  std::string cell_type;
  std::string name;
  // (pin, net) in the order written in the source.
  std::vector<std::pair<std::string, std::string>> connections;
  int source_line = 0;

  bool operator==(const Instance&) const = default;
};

struct Netlist {
  std::string module_name;
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;
  std::vector<Instance> instances;

  bool operator==(const Netlist&) const = default;

  // Net driven by the instance's output pin, or empty if unconnected.
  std::string OutputNet(const Instance& inst, const CellLibrary& lib) const;
};

// Parses the structural Verilog subset: a single module with input/output/
// wire declarations (scalar or [msb:lsb] vectors), named-port cell
// instantiations and net-to-net `assign` statements. Validates the result
// against the library and the single-driver rule.
Netlist ParseNetlist(std::string_view text, const CellLibrary& library);
Netlist ParseNetlistFile(const std::string& path, const CellLibrary& library);

// Emits a Netlist in the same subset; ParseNetlist(EmitNetlist(n)) == n.
std::string EmitNetlist(const Netlist& netlist, const CellLibrary& library);

// Circuit name -> trojan net names.
using LabelMap = std::map<std::string, std::set<std::string>>;

LabelMap LoadLabels(std::string_view json_text);
LabelMap LoadLabelsFile(const std::string& path);
std::string DumpLabels(const LabelMap& labels);

}  // namespace htxai

#endif  // HTXAI_NETLIST_H_
