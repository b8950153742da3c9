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

#include "htxai/benchgen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <nlohmann/json.hpp>

#include "htxai/error.h"
#include "htxai/file_util.h"
#include "htxai/random.h"

namespace htxai {

namespace {

struct WeightedCell {
  const char* name;
  int weight;
};

// Mostly two-input logic, as in synthesized netlists.
constexpr WeightedCell kCellMix[] = {
    {"INV", 8},   {"BUF", 4},   {"AND2", 12}, {"OR2", 12},  {"NAND2", 14}, {"NOR2", 12},
    {"XOR2", 6},  {"XNOR2", 3}, {"AND3", 4},  {"OR3", 3},   {"NAND3", 4},  {"NOR3", 3},
    {"AND4", 1},  {"OR4", 1},   {"NAND4", 1}, {"NOR4", 1},  {"MUX2", 4},
};

const char* kInputPins[] = {"A", "B", "C", "D"};

std::uint64_t CircuitSeed(std::uint64_t seed, int index) {
  return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1);
}

std::string CircuitName(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "synth_%03d", index);
  return buf;
}

void CheckRange(const IntRange& r, const char* what, int min_lo) {
  if (r.lo > r.hi || r.lo < min_lo) {
    throw Error(ErrorCode::kInfeasibleConfig, std::string(what) + " range [" + std::to_string(r.lo) +
                                                  ", " + std::to_string(r.hi) + "] is invalid");
  }
}

// Balanced tree of AND2..AND4 cells over `taps`; returns the root net.
// `next_name` yields (instance name, output net) pairs.
template <typename NameFn>
std::string BuildAndTree(std::vector<std::string> level, NameFn next_name, std::vector<Instance>& out) {
  while (level.size() > 1) {
    const std::size_t groups = (level.size() + 3) / 4;
    std::vector<std::string> next;
    std::size_t cursor = 0;
    for (std::size_t g = 0; g < groups; ++g) {
      const std::size_t size = level.size() / groups + (g < level.size() % groups ? 1 : 0);
      auto [inst_name, net] = next_name();
      Instance inst;
      inst.cell_type = "AND" + std::to_string(size);
      inst.name = inst_name;
      for (std::size_t k = 0; k < size; ++k) inst.connections.emplace_back(kInputPins[k], level[cursor++]);
      inst.connections.emplace_back("Y", net);
      out.push_back(std::move(inst));
      next.push_back(net);
    }
    level = std::move(next);
  }
  return level.front();
}

}  // namespace

void GenConfig::Validate() const {
  if (n_circuits < 1) throw Error(ErrorCode::kInfeasibleConfig, "n_circuits must be >= 1");
  CheckRange(gates_per_circuit, "gates_per_circuit", 1);
  CheckRange(pi_count, "pi_count", 1);
  CheckRange(po_count, "po_count", 1);
  CheckRange(decoys_per_circuit, "decoys_per_circuit", 0);
  if (!(ff_fraction >= 0.0 && ff_fraction <= 1.0) ||
      !(trojan_fraction_of_circuits >= 0.0 && trojan_fraction_of_circuits <= 1.0)) {
    throw Error(ErrorCode::kInfeasibleConfig, "fractions must lie in [0, 1]");
  }
  if (trigger_width < 2) throw Error(ErrorCode::kInfeasibleConfig, "trigger_width must be >= 2");
  if (po_count.lo > gates_per_circuit.hi) {
    throw Error(ErrorCode::kInfeasibleConfig, "po_count exceeds the number of gate outputs");
  }
}

std::string GenConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["n_circuits"] = n_circuits;
  j["gates_per_circuit"] = {gates_per_circuit.lo, gates_per_circuit.hi};
  j["pi_count"] = {pi_count.lo, pi_count.hi};
  j["po_count"] = {po_count.lo, po_count.hi};
  j["ff_fraction"] = ff_fraction;
  j["trojan_fraction_of_circuits"] = trojan_fraction_of_circuits;
  j["trigger_width"] = trigger_width;
  j["decoys_per_circuit"] = {decoys_per_circuit.lo, decoys_per_circuit.hi};
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

GenConfig GenConfig::FromJson(std::string_view text) {
  GenConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    auto range = [&](const char* key, IntRange& r) {
      if (!j.contains(key)) return;
      const auto v = j.at(key).get<std::vector<int>>();
      if (v.size() != 2) throw Error(ErrorCode::kInfeasibleConfig, std::string(key) + " must be [lo, hi]");
      r = {v[0], v[1]};
    };
    c.n_circuits = j.value("n_circuits", c.n_circuits);
    range("decoys_per_circuit", c.decoys_per_circuit);
    range("gates_per_circuit", c.gates_per_circuit);
    range("pi_count", c.pi_count);
    range("po_count", c.po_count);
    c.ff_fraction = j.value("ff_fraction", c.ff_fraction);
    c.trojan_fraction_of_circuits = j.value("trojan_fraction_of_circuits", c.trojan_fraction_of_circuits);
    c.trigger_width = j.value("trigger_width", c.trigger_width);
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInfeasibleConfig, e.what());
  }
  return c;
}

Netlist GenerateCircuit(const GenConfig& config, int index) {
  config.Validate();
  Rng rng(CircuitSeed(config.seed, index));
  const int n_gates = static_cast<int>(rng.between(config.gates_per_circuit.lo, config.gates_per_circuit.hi));
  const int n_pis = static_cast<int>(rng.between(config.pi_count.lo, config.pi_count.hi));
  const int n_pos = static_cast<int>(rng.between(config.po_count.lo, config.po_count.hi));
  if (n_pos > n_gates) {
    throw Error(ErrorCode::kInfeasibleConfig, "po_count " + std::to_string(n_pos) + " exceeds " +
                                                  std::to_string(n_gates) + " gate outputs");
  }
  const int n_ffs = std::min(n_gates - 1, static_cast<int>(std::lround(n_gates * config.ff_fraction)));

  Netlist nl;
  nl.module_name = CircuitName(index);
  std::vector<std::string> nets;  // candidate gate inputs
  for (int i = 0; i < n_pis; ++i) nets.push_back("pi" + std::to_string(i));
  nl.primary_inputs = nets;
  if (n_ffs > 0) nl.primary_inputs.push_back("clk");

  std::map<std::string, int> fanout;
  std::vector<std::string> unused = nets;
  auto use = [&](const std::string& net) {
    if (fanout[net]++ == 0) {
      auto it = std::find(unused.begin(), unused.end(), net);
      if (it != unused.end()) unused.erase(it);
    }
  };

  std::vector<bool> is_ff(n_gates, false);
  {
    std::vector<int> positions(n_gates - 1);
    for (int i = 0; i < n_gates - 1; ++i) positions[i] = i + 1;
    rng.shuffle(std::span<int>(positions));
    for (int i = 0; i < n_ffs; ++i) is_ff[positions[i]] = true;
  }
  int total_weight = 0;
  for (const auto& c : kCellMix) total_weight += c.weight;

  std::vector<std::size_t> pending_ff;  // instances whose D pin is wired last
  for (int j = 0; j < n_gates; ++j) {
    Instance inst;
    inst.name = "g" + std::to_string(j);
    const std::string out = "n" + std::to_string(j);
    if (is_ff[j]) {
      inst.cell_type = "DFF";
      inst.connections = {{"CK", "clk"}, {"Q", out}};
      pending_ff.push_back(nl.instances.size());
    } else {
      static const CellLibrary lib = CellLibrary::Default();
      const CellType* cell = nullptr;
      std::string chosen;
      do {
        int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(total_weight)));
        for (const auto& c : kCellMix) {
          if ((pick -= c.weight) < 0) {
            chosen = c.name;
            break;
          }
        }
        cell = lib.Find(chosen);
      } while (cell->input_pins.size() > nets.size());
      inst.cell_type = chosen;
      std::vector<std::string> picked;
      for (const auto& pin : cell->input_pins) {
        std::string net;
        for (int attempt = 0; attempt < 8; ++attempt) {
          if (!unused.empty() && rng.chance(0.7)) {
            net = unused[rng.below(unused.size())];
          } else if (rng.chance(0.6)) {
            const std::size_t window = std::min<std::size_t>(24, nets.size());
            net = nets[nets.size() - 1 - rng.below(window)];
          } else {
            net = nets[rng.below(nets.size())];
          }
          if (std::find(picked.begin(), picked.end(), net) == picked.end()) break;
        }
        picked.push_back(net);
        inst.connections.emplace_back(pin, net);
      }
      for (const auto& net : picked) use(net);
      inst.connections.emplace_back(cell->output_pin, out);
    }
    nl.instances.push_back(std::move(inst));
    nets.push_back(out);
    unused.push_back(out);
  }
  // A flip-flop samples only nets already reachable from a primary input, so
  // no gate ends up in a loop fed solely by state.
  std::vector<bool> live(n_gates, false);
  auto gate_of = [&](const std::string& net) { return net[0] == 'n' ? std::stoi(net.substr(1)) : -1; };
  auto propagate = [&] {
    for (bool changed = true; changed;) {
      changed = false;
      for (int j = 0; j < n_gates; ++j) {
        if (live[j]) continue;
        for (const auto& [pin, net] : nl.instances[j].connections) {
          if (pin == "CK" || pin == "Q" || pin == "Y") continue;
          const int src = gate_of(net);
          if (src < 0 || live[src]) {
            live[j] = true;
            changed = true;
            break;
          }
        }
      }
    }
  };
  propagate();
  for (std::size_t k : pending_ff) {
    std::vector<std::string> fresh_nets;
    std::vector<std::string> live_nets;
    for (int j = 0; j < n_gates; ++j) {
      if (!live[j]) continue;
      const std::string net = "n" + std::to_string(j);
      live_nets.push_back(net);
      if (fanout[net] == 0) fresh_nets.push_back(net);
    }
    const std::string d = !fresh_nets.empty() && rng.chance(0.7) ? fresh_nets[rng.below(fresh_nets.size())]
                                                                 : live_nets[rng.below(live_nets.size())];
    use(d);
    auto& conns = nl.instances[k].connections;
    conns.insert(conns.begin(), {"D", d});
    propagate();
  }

  // Benign decoders: wide AND trees over internal nets selecting a mux, the
  // same shape as a trigger and payload.
  int extra = 0;
  const int n_decoys = static_cast<int>(rng.between(config.decoys_per_circuit.lo, config.decoys_per_circuit.hi));
  for (int k = 0; k < n_decoys && n_gates >= 4; ++k) {
    const int width = static_cast<int>(rng.between(2, std::min(n_gates, std::max(2, config.trigger_width))));
    std::vector<std::string> taps;
    while (static_cast<int>(taps.size()) < width) {
      std::string net = "n" + std::to_string(rng.below(static_cast<std::uint64_t>(n_gates)));
      if (std::find(taps.begin(), taps.end(), net) == taps.end()) taps.push_back(net);
    }
    auto next_name = [&] {
      const std::string id = std::to_string(n_gates + extra++);
      return std::pair{"g" + id, "n" + id};
    };
    const std::size_t first = nl.instances.size();
    const std::string select = BuildAndTree(taps, next_name, nl.instances);
    for (const auto& t : taps) use(t);
    for (std::size_t i = first; i + 1 < nl.instances.size(); ++i) use(nl.instances[i].connections.back().second);
    use(select);
    auto [mux_name, mux_out] = next_name();
    Instance mux;
    mux.cell_type = "MUX2";
    mux.name = mux_name;
    const std::string a = "n" + std::to_string(rng.below(static_cast<std::uint64_t>(n_gates)));
    const std::string b = "n" + std::to_string(rng.below(static_cast<std::uint64_t>(n_gates)));
    use(a);
    use(b);
    mux.connections = {{"A", a}, {"B", b}, {"S", select}, {"Y", mux_out}};
    nl.instances.push_back(std::move(mux));
    unused.push_back(mux_out);
  }

  // State loops read only by themselves never reach an unread net. Expose the
  // lowest such gate as a sink until every gate is observable.
  for (;;) {
    std::map<std::string, std::size_t> driver;
    for (std::size_t i = 0; i < nl.instances.size(); ++i) driver[nl.instances[i].connections.back().second] = i;
    std::vector<bool> seen(nl.instances.size(), false);
    std::vector<std::size_t> stack;
    for (const auto& net : unused) {
      auto it = driver.find(net);
      if (it != driver.end() && !seen[it->second]) {
        seen[it->second] = true;
        stack.push_back(it->second);
      }
    }
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (const auto& [pin, net] : nl.instances[i].connections) {
        auto it = driver.find(net);
        if (pin != "Y" && pin != "Q" && it != driver.end() && !seen[it->second]) {
          seen[it->second] = true;
          stack.push_back(it->second);
        }
      }
    }
    const auto hidden = std::find(seen.begin(), seen.end(), false);
    if (hidden == seen.end()) break;
    unused.push_back(nl.instances[hidden - seen.begin()].connections.back().second);
  }

  // Gate outputs nobody reads become outputs; merge surplus pairs first.
  std::vector<std::string> dangling;
  for (const auto& net : unused) {
    if (net[0] == 'n') dangling.push_back(net);
  }
  while (static_cast<int>(dangling.size()) > n_pos) {
    const std::string a = dangling[0];
    const std::string b = dangling[1];
    dangling.erase(dangling.begin(), dangling.begin() + 2);
    Instance inst;
    inst.cell_type = rng.chance(0.5) ? "OR2" : "XOR2";
    inst.name = "g" + std::to_string(n_gates + extra);
    const std::string out = "n" + std::to_string(n_gates + extra);
    ++extra;
    inst.connections = {{"A", a}, {"B", b}, {"Y", out}};
    use(a);
    use(b);
    nl.instances.push_back(std::move(inst));
    dangling.push_back(out);
  }
  std::set<std::string> po_set(dangling.begin(), dangling.end());
  while (static_cast<int>(po_set.size()) < n_pos) {
    const auto& inst = nl.instances[rng.below(nl.instances.size())];
    po_set.insert(inst.connections.back().second);
  }
  for (const auto& inst : nl.instances) {
    for (const auto& [pin, net] : inst.connections) {
      if ((pin == "Y" || pin == "Q") && po_set.count(net)) nl.primary_outputs.push_back(net);
    }
  }
  return nl;
}

TrojanInsertion InsertTrojan(const Netlist& netlist, int trigger_width, std::uint64_t seed) {
  if (trigger_width < 2) throw Error(ErrorCode::kInvalidArgument, "trigger width must be >= 2");
  static const CellLibrary lib = CellLibrary::Default();
  Rng rng(seed);

  std::set<std::string> po(netlist.primary_outputs.begin(), netlist.primary_outputs.end());
  std::set<std::string> used_names;
  std::vector<std::string> internal;
  std::vector<std::size_t> po_drivers;
  for (std::size_t i = 0; i < netlist.instances.size(); ++i) {
    const auto& inst = netlist.instances[i];
    used_names.insert(inst.name);
    const std::string out = netlist.OutputNet(inst, lib);
    used_names.insert(out);
    if (po.count(out)) {
      po_drivers.push_back(i);
    } else {
      internal.push_back(out);
    }
    for (const auto& [pin, net] : inst.connections) used_names.insert(net);
  }
  for (const auto& p : netlist.primary_inputs) used_names.insert(p);
  if (static_cast<int>(internal.size()) < trigger_width) {
    throw Error(ErrorCode::kInsufficientNets, "need " + std::to_string(trigger_width) +
                                                  " internal nets, found " + std::to_string(internal.size()));
  }
  if (po_drivers.empty()) throw Error(ErrorCode::kInsufficientNets, "no gate-driven primary output");

  auto fresh = [&](const std::string& stem) {
    std::string name = stem;
    for (int k = 1; used_names.count(name); ++k) name = stem + "_" + std::to_string(k);
    used_names.insert(name);
    return name;
  };

  TrojanInsertion result;
  Netlist& out = result.netlist;
  out = netlist;

  rng.shuffle(std::span<std::string>(internal));
  int gate_id = 0;
  const std::size_t first_added = out.instances.size();
  const std::string trigger = BuildAndTree(
      std::vector<std::string>(internal.begin(), internal.begin() + trigger_width),
      [&] {
        const std::string id = std::to_string(gate_id++);
        return std::pair{fresh("ht_trigger" + id), fresh("ht_t" + id)};
      },
      out.instances);
  for (std::size_t i = first_added; i < out.instances.size(); ++i) {
    result.trojan_nets.insert(out.instances[i].connections.back().second);
  }

  // Payload: splice a mux in front of one primary output.
  const std::size_t host = po_drivers[rng.below(po_drivers.size())];
  const std::string victim = netlist.OutputNet(netlist.instances[host], lib);
  const std::string original = fresh(victim + "_pre");
  for (auto& inst : out.instances) {
    for (auto& [pin, net] : inst.connections) {
      if (net == victim) net = original;
    }
  }
  std::string leak;
  do {
    leak = internal[rng.below(internal.size())];
  } while (leak == victim);
  Instance mux;
  mux.cell_type = "MUX2";
  mux.name = fresh("ht_payload");
  mux.connections = {{"A", original}, {"B", leak}, {"S", trigger}, {"Y", victim}};
  out.instances.push_back(std::move(mux));
  result.trojan_nets.insert(victim);
  return result;
}

std::vector<CorpusCircuit> GenerateCorpus(const GenConfig& config) {
  config.Validate();
  const int n_trojan = static_cast<int>(std::lround(config.n_circuits * config.trojan_fraction_of_circuits));
  std::vector<int> order(config.n_circuits);
  for (int i = 0; i < config.n_circuits; ++i) order[i] = i;
  Rng rng(config.seed);
  rng.shuffle(std::span<int>(order));
  std::set<int> infected(order.begin(), order.begin() + n_trojan);

  std::vector<CorpusCircuit> corpus;
  for (int i = 0; i < config.n_circuits; ++i) {
    CorpusCircuit c;
    c.index = i;
    c.netlist = GenerateCircuit(config, i);
    c.name = c.netlist.module_name;
    if (infected.count(i)) {
      auto inserted = InsertTrojan(c.netlist, config.trigger_width, CircuitSeed(config.seed, i) ^ 0x5bd1e995ULL);
      c.netlist = std::move(inserted.netlist);
      c.trojan_nets = std::move(inserted.trojan_nets);
    }
    corpus.push_back(std::move(c));
  }
  return corpus;
}

std::string CorpusManifest(const GenConfig& config, const std::vector<CorpusCircuit>& corpus) {
  static const CellLibrary lib = CellLibrary::Default();
  nlohmann::ordered_json doc;
  doc["schema"] = "htxai.corpus_manifest";
  doc["version"] = 1;
  doc["config"] = nlohmann::ordered_json::parse(config.ToJson());
  doc["labels"] = "labels.json";
  nlohmann::ordered_json circuits = nlohmann::ordered_json::array();
  for (const auto& c : corpus) {
    int ffs = 0;
    for (const auto& inst : c.netlist.instances) ffs += lib.Find(inst.cell_type)->is_flip_flop ? 1 : 0;
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["file"] = c.name + ".v";
    jc["index"] = c.index;
    jc["seed"] = CircuitSeed(config.seed, c.index);
    jc["gates"] = c.netlist.instances.size();
    jc["flip_flops"] = ffs;
    jc["primary_inputs"] = c.netlist.primary_inputs.size();
    jc["primary_outputs"] = c.netlist.primary_outputs.size();
    jc["trojan"] = !c.trojan_nets.empty();
    jc["trojan_nets"] = std::vector<std::string>(c.trojan_nets.begin(), c.trojan_nets.end());
    circuits.push_back(std::move(jc));
  }
  doc["circuits"] = std::move(circuits);
  return doc.dump(2) + "\n";
}

std::string WriteCorpus(const GenConfig& config, const std::string& dir) {
  static const CellLibrary lib = CellLibrary::Default();
  const auto corpus = GenerateCorpus(config);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  const std::filesystem::path root(dir);
  LabelMap labels;
  for (const auto& c : corpus) {
    WriteTextFile((root / (c.name + ".v")).string(), EmitNetlist(c.netlist, lib));
    labels[c.name] = c.trojan_nets;
  }
  WriteTextFile((root / "labels.json").string(), DumpLabels(labels));
  std::string manifest = CorpusManifest(config, corpus);
  WriteTextFile((root / "manifest.json").string(), manifest);
  return manifest;
}

}  // namespace htxai
