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


#ifndef HTXAI_TESTS_TEST_UTIL_H_
#define HTXAI_TESTS_TEST_UTIL_H_

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "htxai/circuit_graph.h"
#include "htxai/features.h"
#include "htxai/netlist.h"
#include "htxai/random.h"

namespace htxai::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(HTXAI_TEST_DATA_DIR) + "/" + name;
}

inline const char* kAnd2Module = R"(
module top (a, b, y);
  input a, b;
  output y;
  AND2 g1 (.A(a), .B(b), .Y(y));
endmodule
)";

inline CircuitGraph GraphOf(const std::string& text) {
  const CellLibrary lib = CellLibrary::Default();
  return BuildGraph(ParseNetlist(text, lib), lib);
}

inline CircuitGraph Fixture10() {
  const CellLibrary lib = CellLibrary::Default();
  return BuildGraph(ParseNetlistFile(DataPath("fix10.v"), lib), lib);
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("htxai_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Two Gaussian-ish blobs on integer features, label 1 shifted upward in LGFi
// and downward in PO.
inline Dataset ToyDataset(int n_benign, int n_trojan, std::uint64_t seed,
                          const std::string& circuit = "toy") {
  Rng rng(seed);
  Dataset ds;
  auto add = [&](int label, int i) {
    LabeledSample s;
    s.label = label;
    s.features.lgfi = rng.between(2, 10) + (label ? rng.between(2, 8) : 0);
    s.features.ffi = rng.between(0, 6);
    s.features.ffo = rng.between(0, 6);
    s.features.pi = rng.between(1, 8);
    s.features.po = label ? rng.between(0, 3) : rng.between(1, 9);
    s.provenance = {circuit, (label ? "t" : "n") + std::to_string(i), i + 1};
    ds.samples.push_back(s);
  };
  for (int i = 0; i < n_benign; ++i) add(0, i);
  for (int i = 0; i < n_trojan; ++i) add(1, i);
  return ds;
}

}  // namespace htxai::testing

#endif  // HTXAI_TESTS_TEST_UTIL_H_
