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

#include "htxai/features.h"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <tuple>

#include "htxai/error.h"
#include "htxai/random.h"

namespace htxai {

std::int64_t FeatureVector::operator[](int i) const {
  switch (i) {
    case 0: return lgfi;
    case 1: return ffi;
    case 2: return ffo;
    case 3: return pi;
    case 4: return po;
  }
  throw Error(ErrorCode::kInvalidArgument, "feature index out of range");
}

ClassCounts Dataset::class_counts() const {
  ClassCounts counts;
  for (const auto& s : samples) (s.label == 1 ? counts.n_trojan : counts.n_benign)++;
  return counts;
}

std::vector<FeatureRow> Dataset::Rows() const {
  std::vector<FeatureRow> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) rows.push_back(s.features.ToRow());
  return rows;
}

std::vector<int> Dataset::Labels() const {
  std::vector<int> labels;
  labels.reserve(samples.size());
  for (const auto& s : samples) labels.push_back(s.label);
  return labels;
}

void Dataset::Append(const Dataset& other) {
  samples.insert(samples.end(), other.samples.begin(), other.samples.end());
  for (const auto& [circuit, value] : other.sentinels) sentinels[circuit] = value;
}

namespace {

int DriverOrThrow(const CircuitGraph& graph, std::string_view net) {
  auto driver = graph.Driver(net);
  if (!driver) throw Error(ErrorCode::kUnknownNet, "net '" + std::string(net) + "'");
  return *driver;
}

// Breadth-first search from `start` that stops at the first node accepted by
// `is_target`. Nodes for which `blocks` holds are never expanded unless they
// are the start node.
template <typename Neighbors, typename Target, typename Blocks>
std::optional<std::int64_t> SearchFrom(const CircuitGraph& graph, int start,
                                       Neighbors neighbors, Target is_target,
                                       Blocks blocks) {
  std::vector<std::int64_t> dist(graph.nodes().size(), -1);
  std::deque<int> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (is_target(v)) return dist[v];
    if (v != start && blocks(v)) continue;
    for (int w : neighbors(v)) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return std::nullopt;
}

}  // namespace

std::int64_t ComputeLgfi(const CircuitGraph& graph, std::string_view net) {
  const int driver = DriverOrThrow(graph, net);
  const GraphNode& d = graph.node(driver);
  if (d.kind != NodeKind::kGate) return 0;
  std::vector<int> gates{driver};
  for (int u : d.fanin) {
    if (graph.node(u).kind == NodeKind::kGate) gates.push_back(u);
  }
  std::sort(gates.begin(), gates.end());
  gates.erase(std::unique(gates.begin(), gates.end()), gates.end());
  std::int64_t total = 0;
  for (int g : gates) total += static_cast<std::int64_t>(graph.node(g).fanin.size());
  return total;
}

std::optional<std::int64_t> ComputeFfDistance(const CircuitGraph& graph,
                                              std::string_view net,
                                              Direction direction) {
  const int start = DriverOrThrow(graph, net);
  auto is_ff = [&](int v) { return graph.node(v).is_ff; };
  auto never = [](int) { return false; };
  if (direction == Direction::kUpstream) {
    return SearchFrom(graph, start, [&](int v) -> const std::vector<int>& { return graph.node(v).fanin; },
                      is_ff, never);
  }
  return SearchFrom(graph, start, [&](int v) -> const std::vector<int>& { return graph.node(v).fanout; },
                    is_ff, never);
}

std::optional<std::int64_t> ComputeIoDistance(const CircuitGraph& graph,
                                              std::string_view net,
                                              Direction direction) {
  const int start = DriverOrThrow(graph, net);
  auto blocks = [&](int v) { return graph.node(v).is_ff; };
  if (direction == Direction::kUpstream) {
    return SearchFrom(
        graph, start, [&](int v) -> const std::vector<int>& { return graph.node(v).fanin; },
        [&](int v) { return graph.node(v).is_pi; }, blocks);
  }
  return SearchFrom(
      graph, start, [&](int v) -> const std::vector<int>& { return graph.node(v).fanout; },
      [&](int v) {
        const GraphNode& node = graph.node(v);
        return node.kind != NodeKind::kPrimaryOutput && graph.IsPrimaryOutputNet(node.net);
      },
      blocks);
}

LevelGraph LevelGraph::Reversed() const {
  LevelGraph r;
  r.fanin = fanout;
  r.fanout = fanin;
  r.is_ff = is_ff;
  r.is_pi = is_po;
  r.is_po = is_pi;
  return r;
}

LevelGraph ToLevelGraph(const CircuitGraph& graph) {
  const auto& nodes = graph.nodes();
  const std::size_t n = nodes.size();
  LevelGraph lg;
  lg.fanin.resize(n);
  lg.fanout.resize(n);
  lg.is_ff.assign(n, false);
  lg.is_pi.assign(n, false);
  lg.is_po.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    const GraphNode& node = nodes[v];
    if (node.kind == NodeKind::kPrimaryOutput) continue;
    lg.is_ff[v] = node.is_ff;
    lg.is_pi[v] = node.is_pi;
    lg.is_po[v] = graph.IsPrimaryOutputNet(node.net);
    lg.fanin[v] = node.fanin;
    for (int w : node.fanout) {
      if (nodes[w].kind != NodeKind::kPrimaryOutput) lg.fanout[v].push_back(w);
    }
  }
  return lg;
}

namespace {

std::vector<std::int64_t> MultiSourceLevels(const std::vector<std::vector<int>>& adjacency,
                                            const std::vector<bool>& is_source,
                                            const std::vector<bool>& is_ff) {
  const std::size_t n = adjacency.size();
  std::vector<std::int64_t> dist(n, NodeLevels::kUnreachable);
  std::deque<int> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_source[v]) {
      dist[v] = 0;
      queue.push_back(static_cast<int>(v));
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (is_ff[v] && !is_source[v]) continue;
    for (int w : adjacency[v]) {
      if (dist[w] != NodeLevels::kUnreachable) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace

NodeLevels ComputeAllLevels(const LevelGraph& graph) {
  NodeLevels levels;
  levels.ffi = MultiSourceLevels(graph.fanout, graph.is_ff, graph.is_ff);
  levels.ffo = MultiSourceLevels(graph.fanin, graph.is_ff, graph.is_ff);
  levels.pi = MultiSourceLevels(graph.fanout, graph.is_pi, graph.is_ff);
  levels.po = MultiSourceLevels(graph.fanin, graph.is_po, graph.is_ff);
  return levels;
}

Dataset ExtractAll(const CircuitGraph& graph, const std::set<std::string>& trojan_nets,
                   const std::string& circuit, const ExtractOptions& options) {
  for (const auto& net : trojan_nets) {
    auto driver = graph.Driver(net);
    if (!driver || graph.node(*driver).kind != NodeKind::kGate) {
      throw Error(ErrorCode::kUnknownNet, "label '" + net + "' is not a gate-driven net of " + circuit);
    }
  }
  const NodeLevels levels = ComputeAllLevels(ToLevelGraph(graph));

  std::vector<int> gates;
  for (int v : graph.topological_order()) {
    if (graph.node(v).kind == NodeKind::kGate) gates.push_back(v);
  }

  std::int64_t sentinel = 0;
  if (options.fixed_sentinel) {
    sentinel = *options.fixed_sentinel;
  } else {
    std::int64_t longest = 0;
    for (int v : gates) {
      for (const auto* column : {&levels.ffi, &levels.ffo, &levels.pi, &levels.po}) {
        longest = std::max(longest, (*column)[v]);
      }
    }
    sentinel = longest + 1;
  }
  auto level = [&](std::int64_t value) {
    return value == NodeLevels::kUnreachable ? sentinel : value;
  };

  Dataset out;
  out.sentinels[circuit] = sentinel;
  out.samples.reserve(gates.size());
  for (int v : gates) {
    const GraphNode& node = graph.node(v);
    LabeledSample s;
    s.features.lgfi = ComputeLgfi(graph, node.net);
    s.features.ffi = level(levels.ffi[v]);
    s.features.ffo = level(levels.ffo[v]);
    s.features.pi = level(levels.pi[v]);
    s.features.po = level(levels.po[v]);
    s.label = trojan_nets.count(node.net) ? 1 : 0;
    s.provenance = {circuit, node.net, node.source_line};
    out.samples.push_back(std::move(s));
  }
  return out;
}

Split StratifiedSplit(const Dataset& dataset, const SplitOptions& options) {
  if (!(options.test_fraction > 0.0 && options.test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "test_fraction must lie in (0, 1)");
  }
  std::map<std::pair<std::string, int>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    const auto& s = dataset.samples[i];
    strata[{s.provenance.circuit, s.label}].push_back(i);
  }

  Rng rng(options.seed);
  std::vector<bool> in_test(dataset.samples.size(), false);
  auto allocate = [&](std::vector<std::size_t>& members, std::size_t n_test) {
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t k = 0; k < n_test; ++k) in_test[members[k]] = true;
  };
  auto test_count = [&](std::size_t m) {
    return static_cast<std::size_t>(static_cast<double>(m) * options.test_fraction + 0.5);
  };

  std::map<int, std::vector<std::size_t>> pooled;
  for (auto& [key, members] : strata) {
    const std::size_t m = members.size();
    const std::size_t n_test = test_count(m);
    if (n_test == 0 || n_test == m) {
      if (!options.collapse_small_strata) {
        throw Error(ErrorCode::kEmptyStratum,
                    "stratum circuit=" + key.first + " class=" + std::to_string(key.second) +
                        " (" + std::to_string(m) + " samples) cannot populate both sides");
      }
      auto& pool = pooled[key.second];
      pool.insert(pool.end(), members.begin(), members.end());
      continue;
    }
    allocate(members, n_test);
  }
  for (auto& [label, members] : pooled) {
    std::sort(members.begin(), members.end());
    const std::size_t m = members.size();
    allocate(members, std::min(test_count(m), m > 1 ? m - 1 : std::size_t{0}));
  }

  Split split;
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    (in_test[i] ? split.test : split.train).samples.push_back(dataset.samples[i]);
  }
  split.train.sentinels = dataset.sentinels;
  split.test.sentinels = dataset.sentinels;
  return split;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(std::string_view line, int line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kMalformedCsv, "line " + std::to_string(line_no) + ": unterminated quote");
  return fields;
}

namespace {

std::int64_t ParseInteger(const std::string& s, int line_no, std::string_view column) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kMalformedCsv, "line " + std::to_string(line_no) + ": column " +
                                              std::string(column) + " is not an integer: '" + s + "'");
  }
  return value;
}

}  // namespace

std::string DatasetToCsv(const Dataset& dataset) {
  std::ostringstream out;
  out << kFeatureCsvHeader << '\n';
  for (const auto& s : dataset.samples) {
    const auto& f = s.features;
    out << CsvField(s.provenance.circuit) << ',' << CsvField(s.provenance.net) << ','
        << s.provenance.line << ',' << f.lgfi << ',' << f.ffi << ',' << f.ffo << ',' << f.pi
        << ',' << f.po << ',' << s.label << '\n';
  }
  return out.str();
}

Dataset DatasetFromCsv(std::string_view text) {
  Dataset dataset;
  int line_no = 0;
  std::size_t pos = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!saw_header) {
      if (line != kFeatureCsvHeader) {
        throw Error(ErrorCode::kMalformedCsv, "expected header '" + std::string(kFeatureCsvHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    auto fields = SplitCsvLine(line, line_no);
    if (fields.size() != 9) {
      throw Error(ErrorCode::kMalformedCsv, "line " + std::to_string(line_no) + ": expected 9 fields");
    }
    LabeledSample s;
    s.provenance.circuit = fields[0];
    s.provenance.net = fields[1];
    s.provenance.line = static_cast<int>(ParseInteger(fields[2], line_no, "line"));
    s.features.lgfi = ParseInteger(fields[3], line_no, "LGFi");
    s.features.ffi = ParseInteger(fields[4], line_no, "FFi");
    s.features.ffo = ParseInteger(fields[5], line_no, "FFo");
    s.features.pi = ParseInteger(fields[6], line_no, "PI");
    s.features.po = ParseInteger(fields[7], line_no, "PO");
    s.label = static_cast<int>(ParseInteger(fields[8], line_no, "label"));
    for (int i = 0; i < kNumFeatures; ++i) {
      if (s.features[i] < 0) throw Error(ErrorCode::kMalformedCsv, "line " + std::to_string(line_no) + ": negative feature");
    }
    if (s.label != 0 && s.label != 1) {
      throw Error(ErrorCode::kMalformedCsv, "line " + std::to_string(line_no) + ": label must be 0 or 1");
    }
    dataset.samples.push_back(std::move(s));
  }
  if (!saw_header) throw Error(ErrorCode::kMalformedCsv, "empty feature file");
  return dataset;
}

}  // namespace htxai
