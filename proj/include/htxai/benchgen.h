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

#ifndef HTXAI_BENCHGEN_H_
#define HTXAI_BENCHGEN_H_

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "htxai/netlist.h"

namespace htxai {

struct IntRange {
  int lo = 0;
  int hi = 0;
};

struct GenConfig {
  int n_circuits = 30;
  IntRange gates_per_circuit{200, 1500};
  IntRange pi_count{8, 32};
  IntRange po_count{4, 16};
  double ff_fraction = 0.1;
  double trojan_fraction_of_circuits = 1.0 / 3.0;
  int trigger_width = 8;
  // Benign AND-tree decoders driving a mux select, per circuit.
  IntRange decoys_per_circuit{0, 2};
  std::uint64_t seed = 42;

  // Throws kInfeasibleConfig.
  void Validate() const;
  std::string ToJson() const;
  static GenConfig FromJson(std::string_view text);
};

// Random gate-level circuit over the default cell library. Every gate output
// reaches a primary output and cycles pass only through flip-flops. Deterministic per (config.seed, index).
Netlist GenerateCircuit(const GenConfig& config, int index);

struct TrojanInsertion {
  Netlist netlist;
  std::set<std::string> trojan_nets;
};

// Adds an AND-tree trigger over `trigger_width` randomly chosen internal nets
// and a 2:1 mux payload that, when triggered, replaces one primary output
// with another internal net. The labels are exactly the inserted gates'
// output nets. Throws kInsufficientNets.
TrojanInsertion InsertTrojan(const Netlist& netlist, int trigger_width, std::uint64_t seed);

struct CorpusCircuit {
  std::string name;
  int index = 0;
  Netlist netlist;
  std::set<std::string> trojan_nets;
};

std::vector<CorpusCircuit> GenerateCorpus(const GenConfig& config);

// Manifest JSON listing circuits, seeds and sizes.
std::string CorpusManifest(const GenConfig& config, const std::vector<CorpusCircuit>& corpus);

// Writes <name>.v per circuit, labels.json and manifest.json into `dir`
// (created if needed). Returns the manifest text.
std::string WriteCorpus(const GenConfig& config, const std::string& dir);

}  // namespace htxai

#endif  // HTXAI_BENCHGEN_H_
