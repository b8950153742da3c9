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

#ifndef HTXAI_FEATURES_H_
#define HTXAI_FEATURES_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "htxai/circuit_graph.h"

namespace htxai {

inline constexpr int kNumFeatures = 5;
inline constexpr std::array<std::string_view, kNumFeatures> kFeatureNames = {
    "LGFi", "FFi", "FFo", "PI", "PO"};

// Real-valued view of a feature vector, used as model input.
using FeatureRow = std::array<double, kNumFeatures>;

struct FeatureVector {
  std::int64_t lgfi = 0;
  std::int64_t ffi = 0;
  std::int64_t ffo = 0;
  std::int64_t pi = 0;
  std::int64_t po = 0;

  FeatureRow ToRow() const {
    return {static_cast<double>(lgfi), static_cast<double>(ffi),
            static_cast<double>(ffo), static_cast<double>(pi),
            static_cast<double>(po)};
  }
  std::int64_t operator[](int i) const;
  bool operator==(const FeatureVector&) const = default;
};

struct Provenance {
  std::string circuit;
  std::string net;
  int line = 0;
  bool operator==(const Provenance&) const = default;
};

struct LabeledSample {
  FeatureVector features;
  int label = 0;  // 0 benign, 1 trojan
  Provenance provenance;
  bool operator==(const LabeledSample&) const = default;
};

struct ClassCounts {
  std::size_t n_benign = 0;
  std::size_t n_trojan = 0;
  bool operator==(const ClassCounts&) const = default;
};

struct Dataset {
  std::vector<LabeledSample> samples;
  // Unreachable-distance value used per circuit.
  std::map<std::string, std::int64_t> sentinels;

  ClassCounts class_counts() const;
  std::size_t size() const { return samples.size(); }
  std::vector<FeatureRow> Rows() const;
  std::vector<int> Labels() const;
  void Append(const Dataset& other);
};

enum class Direction { kUpstream, kDownstream };

// Per-net traversals. Unreachable structures yield std::nullopt. A net is
// identified with the node that drives it; paths may end at a flip-flop but
// never pass through one. All throw kUnknownNet for nets without a driver.

// Sum of connected input pins over the distinct gates within two levels
// upstream of `net` (the driver and the gates feeding it).
std::int64_t ComputeLgfi(const CircuitGraph& graph, std::string_view net);

// Gate hops to the nearest flip-flop. The output net of a flip-flop is 0
// upstream (and downstream); a net feeding a flip-flop input is 1
// downstream.
std::optional<std::int64_t> ComputeFfDistance(const CircuitGraph& graph,
                                              std::string_view net,
                                              Direction direction);

// Gate hops to the nearest primary input (upstream) or primary-output net
// (downstream). Nets bound to a port have distance 0.
std::optional<std::int64_t> ComputeIoDistance(const CircuitGraph& graph,
                                              std::string_view net,
                                              Direction direction);

// Abstract node graph on which all four distance features are computed in
// one multi-source breadth-first pass per feature.
struct LevelGraph {
  std::vector<std::vector<int>> fanin;
  std::vector<std::vector<int>> fanout;
  std::vector<bool> is_ff;
  std::vector<bool> is_pi;  // node drives a primary-input net
  std::vector<bool> is_po;  // node drives a primary-output net

  std::size_t size() const { return fanin.size(); }
  // Edges reversed and the PI/PO roles swapped.
  LevelGraph Reversed() const;
};

LevelGraph ToLevelGraph(const CircuitGraph& graph);

struct NodeLevels {
  static constexpr std::int64_t kUnreachable = -1;
  std::vector<std::int64_t> ffi, ffo, pi, po;
};
NodeLevels ComputeAllLevels(const LevelGraph& graph);

struct ExtractOptions {
  // Replaces the per-circuit (max finite level + 1) sentinel when set.
  std::optional<std::int64_t> fixed_sentinel;
};

// One sample per gate-driven net, in topological order with ties broken by
// net name.
Dataset ExtractAll(const CircuitGraph& graph, const std::set<std::string>& trojan_nets,
                   const std::string& circuit, const ExtractOptions& options = {});

struct SplitOptions {
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  // Strata too small to contribute to both sides are pooled per class
  // across circuits; otherwise kEmptyStratum is raised.
  bool collapse_small_strata = true;
};

struct Split {
  Dataset train;
  Dataset test;
};

// Stratified by (circuit, class). Both sides keep the input order.
Split StratifiedSplit(const Dataset& dataset, const SplitOptions& options);

// Feature CSV: circuit,net,line,LGFi,FFi,FFo,PI,PO,label
inline constexpr std::string_view kFeatureCsvHeader =
    "circuit,net,line,LGFi,FFi,FFo,PI,PO,label";
std::string DatasetToCsv(const Dataset& dataset);

// RFC 4180 quoting when the field needs it.
std::string CsvField(const std::string& s);
// Splits one record; throws kMalformedCsv on an unterminated quote.
std::vector<std::string> SplitCsvLine(std::string_view line, int line_no);
Dataset DatasetFromCsv(std::string_view text);

}  // namespace htxai

#endif  // HTXAI_FEATURES_H_
