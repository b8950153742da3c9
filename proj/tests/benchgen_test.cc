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


#include <algorithm>
#include <deque>
#include <filesystem>
#include <map>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "htxai/benchgen.h"
#include "htxai/circuit_graph.h"
#include "htxai/error.h"
#include "htxai/features.h"
#include "htxai/file_util.h"
#include "test_util.h"

namespace htxai {
namespace {

using testing::DataPath;

Netlist Fixture10Netlist() { return ParseNetlistFile(DataPath("fix10.v"), CellLibrary::Default()); }

std::set<std::string> InstanceNames(const Netlist& n) {
  std::set<std::string> out;
  for (const auto& inst : n.instances) out.insert(inst.name);
  return out;
}

// Forward reach from the PIs and backward reach from the POs, crossing
// flip-flops in both directions.
void ExpectEveryGateOnIoPath(const CircuitGraph& g) {
  const std::size_t n = g.nodes().size();
  auto sweep = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::deque<int> q;
    for (std::size_t v = 0; v < n; ++v) {
      const auto kind = g.node(static_cast<int>(v)).kind;
      if (kind == (forward ? NodeKind::kPrimaryInput : NodeKind::kPrimaryOutput)) {
        seen[v] = true;
        q.push_back(static_cast<int>(v));
      }
    }
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int w : forward ? g.node(v).fanout : g.node(v).fanin) {
        if (!seen[w]) {
          seen[w] = true;
          q.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto from_pi = sweep(true), to_po = sweep(false);
  for (int v : g.GateNodes()) {
    ASSERT_TRUE(from_pi[v]) << g.name() << " " << g.node(v).name << " unreachable from inputs";
    ASSERT_TRUE(to_po[v]) << g.name() << " " << g.node(v).name << " cannot reach an output";
  }
}

TEST(GenConfig, ValidationAndJson) {
  EXPECT_NO_THROW(GenConfig{}.Validate());
  auto bad = [](auto mutate) {
    GenConfig c;
    mutate(c);
    try {
      c.Validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::kInfeasibleConfig;
    }
    return false;
  };
  EXPECT_TRUE(bad([](GenConfig& c) { c.gates_per_circuit = {10, 5}; }));
  EXPECT_TRUE(bad([](GenConfig& c) { c.trigger_width = 1; }));
  EXPECT_TRUE(bad([](GenConfig& c) { c.ff_fraction = 1.5; }));
  EXPECT_TRUE(bad([](GenConfig& c) { c.trojan_fraction_of_circuits = -0.1; }));
  EXPECT_TRUE(bad([](GenConfig& c) { c.n_circuits = 0; }));
  EXPECT_TRUE(bad([](GenConfig& c) { c.po_count = {0, 0}; }));

  GenConfig c;
  c.seed = 9;
  c.gates_per_circuit = {11, 22};
  c.decoys_per_circuit = {1, 3};
  const GenConfig back = GenConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_EQ(back.gates_per_circuit.hi, 22);
}

TEST(GenerateCircuit, SingleGateFamily) {
  GenConfig cfg;
  cfg.gates_per_circuit = {1, 1};
  cfg.pi_count = {2, 2};
  cfg.po_count = {1, 1};
  for (int i = 0; i < 20; ++i) {
    const Netlist n = GenerateCircuit(cfg, i);
    ASSERT_EQ(n.instances.size(), 1u);
    EXPECT_EQ(n.primary_inputs.size(), 2u);
    EXPECT_EQ(n.primary_outputs.size(), 1u);
    EXPECT_NO_THROW(BuildGraph(n, CellLibrary::Default()));
  }
}

TEST(GenerateCircuit, ParsesAndBuildsAtScale) {
  GenConfig cfg;
  cfg.gates_per_circuit = {250, 250};
  const CellLibrary lib = CellLibrary::Default();
  const Netlist n = GenerateCircuit(cfg, 0);
  EXPECT_GE(n.instances.size(), 250u);
  const Netlist back = ParseNetlist(EmitNetlist(n, lib), lib);
  EXPECT_NO_THROW(BuildGraph(back, lib));
}

TEST(GenerateCircuit, EveryGateOnPrimaryPath) {
  const CellLibrary lib = CellLibrary::Default();
  GenConfig cfg;
  cfg.gates_per_circuit = {20, 600};
  cfg.ff_fraction = 0.25;
  cfg.decoys_per_circuit = {0, 3};
  for (int i = 0; i < 25; ++i) ExpectEveryGateOnIoPath(BuildGraph(GenerateCircuit(cfg, i), lib));
}

TEST(GenerateCircuit, DeterministicPerSeedAndIndex) {
  const CellLibrary lib = CellLibrary::Default();
  GenConfig cfg;
  cfg.gates_per_circuit = {50, 100};
  EXPECT_EQ(EmitNetlist(GenerateCircuit(cfg, 3), lib), EmitNetlist(GenerateCircuit(cfg, 3), lib));
  EXPECT_NE(EmitNetlist(GenerateCircuit(cfg, 3), lib), EmitNetlist(GenerateCircuit(cfg, 4), lib));
  GenConfig other = cfg;
  other.seed = 43;
  EXPECT_NE(EmitNetlist(GenerateCircuit(cfg, 3), lib), EmitNetlist(GenerateCircuit(other, 3), lib));
}

TEST(GenerateCircuit, InfeasibleOutputs) {
  GenConfig cfg;
  cfg.gates_per_circuit = {3, 3};
  cfg.po_count = {5, 5};
  try {
    GenerateCircuit(cfg, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleConfig);
  }
}

TEST(InsertTrojan, WidthTwoOnFixture) {
  const Netlist host = Fixture10Netlist();
  const TrojanInsertion ins = InsertTrojan(host, 2, 7);
  EXPECT_EQ(ins.netlist.instances.size(), host.instances.size() + 2);
  EXPECT_EQ(ins.trojan_nets.size(), 2u);
  std::map<std::string, int> added;
  const auto before = InstanceNames(host);
  for (const auto& inst : ins.netlist.instances) {
    if (!before.count(inst.name)) ++added[inst.cell_type];
  }
  EXPECT_EQ(added, (std::map<std::string, int>{{"AND2", 1}, {"MUX2", 1}}));
  EXPECT_EQ(ins.netlist.primary_outputs, host.primary_outputs);
}

TEST(InsertTrojan, LabelsAreExactlyInsertedOutputs) {
  const CellLibrary lib = CellLibrary::Default();
  GenConfig cfg;
  cfg.gates_per_circuit = {80, 400};
  for (int i = 0; i < 10; ++i) {
    const Netlist host = GenerateCircuit(cfg, i);
    for (int width : {2, 3, 5, 8, 13}) {
      const TrojanInsertion ins = InsertTrojan(host, width, 100 + i);
      std::set<std::string> inserted;
      const auto before = InstanceNames(host);
      int and_inputs = 0;
      for (const auto& inst : ins.netlist.instances) {
        if (before.count(inst.name)) continue;
        inserted.insert(ins.netlist.OutputNet(inst, lib));
        if (inst.cell_type != "MUX2") and_inputs += static_cast<int>(inst.connections.size()) - 1;
      }
      EXPECT_EQ(ins.trojan_nets, inserted);
      // A tree over `width` leaves has width - 1 internal edges on top of them.
      EXPECT_EQ(and_inputs, width + static_cast<int>(inserted.size()) - 2);
      const CircuitGraph g = BuildGraph(ins.netlist, lib);
      ExpectEveryGateOnIoPath(g);
      for (const auto& net : ins.trojan_nets) EXPECT_TRUE(g.HasNet(net));
    }
  }
}

TEST(InsertTrojan, TriggerHasElevatedFanin) {
  const CellLibrary lib = CellLibrary::Default();
  GenConfig cfg;
  cfg.decoys_per_circuit = {0, 0};
  for (int i = 0; i < 6; ++i) {
    const Netlist host = GenerateCircuit(cfg, i);
    const TrojanInsertion ins = InsertTrojan(host, 8, i);
    const CircuitGraph g = BuildGraph(ins.netlist, lib);
    const Dataset ds = ExtractAll(g, ins.trojan_nets, host.module_name);
    std::vector<std::int64_t> lgfi;
    std::int64_t trigger = 0;
    for (const auto& s : ds.samples) {
      lgfi.push_back(s.features.lgfi);
      if (s.provenance.net.rfind("ht_t", 0) == 0) trigger = std::max(trigger, s.features.lgfi);
    }
    std::nth_element(lgfi.begin(), lgfi.begin() + lgfi.size() / 2, lgfi.end());
    EXPECT_GT(trigger, lgfi[lgfi.size() / 2]) << i;
  }
}

TEST(InsertTrojan, LabelRoundTripAndErrors) {
  const TrojanInsertion ins = InsertTrojan(Fixture10Netlist(), 3, 1);
  const LabelMap labels = {{"fix10", ins.trojan_nets}};
  EXPECT_EQ(LoadLabels(DumpLabels(labels)), labels);
  try {
    InsertTrojan(Fixture10Netlist(), 20, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientNets);
  }
  EXPECT_THROW(InsertTrojan(Fixture10Netlist(), 1, 1), Error);
}

TEST(Corpus, DefaultShape) {
  const GenConfig cfg;
  const auto corpus = GenerateCorpus(cfg);
  ASSERT_EQ(corpus.size(), 30u);
  int infected = 0;
  std::size_t gates_min = SIZE_MAX, gates_max = 0;
  for (const auto& c : corpus) {
    infected += !c.trojan_nets.empty();
    gates_min = std::min(gates_min, c.netlist.instances.size());
    gates_max = std::max(gates_max, c.netlist.instances.size());
  }
  EXPECT_EQ(infected, 10);
  // Hundreds of gates at the small end, over a thousand at the large end.
  EXPECT_GE(gates_min, 200u);
  EXPECT_LT(gates_min, 500u);
  EXPECT_GT(gates_max, 1000u);
}

TEST(Corpus, WriteIsByteDeterministic) {
  GenConfig cfg;
  cfg.n_circuits = 6;
  cfg.gates_per_circuit = {40, 120};
  const auto a = testing::ScratchDir("corpus_a");
  const auto b = testing::ScratchDir("corpus_b");
  const std::string ma = WriteCorpus(cfg, a.string());
  const std::string mb = WriteCorpus(cfg, b.string());
  EXPECT_EQ(Sha256Hex(ma), Sha256Hex(mb));
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(a)) {
    const auto name = entry.path().filename().string();
    EXPECT_EQ(ReadTextFile(entry.path().string()), ReadTextFile((b / name).string())) << name;
    ++files;
  }
  EXPECT_EQ(files, 8u);

  // The written corpus flows back through the parser and the label loader.
  const CellLibrary lib = CellLibrary::Default();
  const LabelMap labels = LoadLabelsFile((a / "labels.json").string());
  EXPECT_EQ(labels.size(), 6u);
  for (const auto& [name, nets] : labels) {
    const CircuitGraph g = BuildGraph(ParseNetlistFile((a / (name + ".v")).string(), lib), lib);
    EXPECT_TRUE(ResolveLabels(g, nets).unknown_nets.empty());
  }
  const auto manifest = nlohmann::json::parse(ma);
  EXPECT_EQ(manifest["circuits"].size(), 6u);
  EXPECT_EQ(manifest["config"]["seed"], 42);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

}  // namespace
}  // namespace htxai
