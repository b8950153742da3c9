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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "htxai/attribution.h"
#include "htxai/benchgen.h"
#include "htxai/boosted_trees.h"
#include "htxai/case_explainer.h"
#include "htxai/circuit_graph.h"
#include "htxai/error.h"
#include "htxai/eval_stats.h"
#include "htxai/features.h"
#include "htxai/netlist.h"
#include "htxai/property_ensemble.h"
#include "htxai/report.h"

namespace py = pybind11;

namespace htxai {
namespace {

py::object ToPython(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(ToPython(v));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = ToPython(v);
      return out;
    }
  }
}

FeatureRow Row(const std::vector<double>& v) {
  if (v.size() != kNumFeatures) throw Error(ErrorCode::kInvalidArgument, "feature rows have 5 values");
  FeatureRow r;
  std::copy(v.begin(), v.end(), r.begin());
  return r;
}

std::vector<FeatureRow> Rows(const std::vector<std::vector<double>>& v) {
  std::vector<FeatureRow> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(Row(r));
  return out;
}

const CellLibrary& DefaultLibrary() {
  static const CellLibrary lib = CellLibrary::Default();
  return lib;
}

Dataset Extract(const std::string& verilog, const std::set<std::string>& trojan_nets, const CellLibrary* library,
                std::optional<std::int64_t> sentinel) {
  const CellLibrary& lib = library ? *library : DefaultLibrary();
  const Netlist netlist = ParseNetlist(verilog, lib);
  const CircuitGraph graph = BuildGraph(netlist, lib);
  const LabelReport labels = ResolveLabels(graph, trojan_nets);
  ExtractOptions options;
  options.fixed_sentinel = sentinel;
  return ExtractAll(graph, labels.trojan_nets, netlist.module_name, options);
}

py::list DatasetRows(const Dataset& d) {
  py::list out;
  for (const auto& s : d.samples) {
    const FeatureRow r = s.features.ToRow();
    out.append(py::make_tuple(r[0], r[1], r[2], r[3], r[4]));
  }
  return out;
}

AttributionVector Shapley(const BoostedTreeModel& model, const std::vector<double>& x,
                          const std::vector<std::vector<double>>& background) {
  const auto bg = Rows(background);
  return ShapleyExplainer(model, bg).Explain(Row(x));
}

}  // namespace
}  // namespace htxai

PYBIND11_MODULE(_htxai, m) {
  using namespace htxai;
  m.doc() = "Netlist features, boosted-tree trojan detection and explanations";
  m.attr("__version__") = HTXAI_VERSION;
  m.attr("FEATURE_NAMES") = std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());

  py::exception<Error>(m, "HtxaiError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("htxai._htxai").attr("HtxaiError");
      py::object exc = type(e.what());
      exc.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<CellLibrary>(m, "CellLibrary")
      .def_static("default", &CellLibrary::Default)
      .def_static("from_json", [](const std::string& text) { return CellLibrary::FromJson(text); })
      .def("to_json", &CellLibrary::ToJson);

  m.def(
      "emit_netlist",
      [](const std::string& verilog, const CellLibrary* library) {
        const CellLibrary& lib = library ? *library : DefaultLibrary();
        return EmitNetlist(ParseNetlist(verilog, lib), lib);
      },
      py::arg("verilog"), py::arg("library") = nullptr, "Parse and re-emit in canonical form");

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def("__len__", &Dataset::size)
      .def_property_readonly("rows", &DatasetRows)
      .def_property_readonly("labels", &Dataset::Labels)
      .def_property_readonly("provenance",
                             [](const Dataset& d) {
                               py::list out;
                               for (const auto& s : d.samples) {
                                 out.append(py::make_tuple(s.provenance.circuit, s.provenance.net, s.provenance.line));
                               }
                               return out;
                             })
      .def_property_readonly("sentinels", [](const Dataset& d) { return d.sentinels; })
      .def("class_counts",
           [](const Dataset& d) {
             const auto c = d.class_counts();
             return py::make_tuple(c.n_benign, c.n_trojan);
           })
      .def("append", &Dataset::Append)
      .def("to_csv", [](const Dataset& d) { return DatasetToCsv(d); })
      .def_static("from_csv", [](const std::string& text) { return DatasetFromCsv(text); });

  m.def("extract", &Extract, py::arg("verilog"), py::arg("trojan_nets") = std::set<std::string>{},
        py::arg("library") = nullptr, py::arg("sentinel") = std::nullopt,
        "One labelled feature row per gate-driven net");
  m.def(
      "stratified_split",
      [](const Dataset& d, double test_fraction, std::uint64_t seed) {
        Split s = StratifiedSplit(d, {test_fraction, seed, true});
        return py::make_tuple(std::move(s.train), std::move(s.test));
      },
      py::arg("dataset"), py::arg("test_fraction") = 0.2, py::arg("seed") = 42);

  py::class_<BoostedTreeModel>(m, "BoostedTreeModel")
      .def("predict_proba", [](const BoostedTreeModel& model, const std::vector<double>& x) {
        return model.PredictProba(Row(x));
      })
      .def("predict_proba_many",
           [](const BoostedTreeModel& model, const std::vector<std::vector<double>>& xs) {
             std::vector<double> out;
             for (const auto& r : Rows(xs)) out.push_back(model.PredictProba(r));
             return out;
           })
      .def_property_readonly("n_trees", [](const BoostedTreeModel& model) { return model.trees().size(); })
      .def_property_readonly("positive_class_weight",
                             [](const BoostedTreeModel& model) { return model.config().positive_class_weight; })
      .def("to_json", &BoostedTreeModel::ToJson)
      .def_static("from_json", [](const std::string& text) { return BoostedTreeModel::FromJson(text); });

  m.def(
      "train",
      [](const Dataset& d, int n_estimators, int max_depth, double learning_rate,
         std::optional<double> positive_class_weight, std::uint64_t seed) {
        TrainConfig config;
        config.n_estimators = n_estimators;
        config.max_depth = max_depth;
        config.learning_rate = learning_rate;
        config.positive_class_weight = positive_class_weight;
        config.seed = seed;
        return TrainBoostedTrees(d, config);
      },
      py::arg("dataset"), py::arg("n_estimators") = 100, py::arg("max_depth") = 5, py::arg("learning_rate") = 0.1,
      py::arg("positive_class_weight") = std::nullopt, py::arg("seed") = 42,
      "Positive-class weight defaults to N_benign / N_trojan");

  m.def(
      "shapley",
      [](const BoostedTreeModel& model, const std::vector<double>& x,
         const std::vector<std::vector<double>>& background) {
        return ToPython(ToJson(Shapley(model, x, background), Row(x)));
      },
      py::arg("model"), py::arg("x"), py::arg("background"));
  m.def(
      "gradient",
      [](const BoostedTreeModel& model, const std::vector<double>& x, double epsilon) {
        return ToPython(ToJson(GradientExplain(model, Row(x), epsilon), Row(x)));
      },
      py::arg("model"), py::arg("x"), py::arg("epsilon") = 0.01);

  m.def("metrics", [](std::int64_t tp, std::int64_t fp, std::int64_t fn, std::int64_t tn) {
    ConfusionMatrix cm;
    cm.tp = tp;
    cm.fp = fp;
    cm.fn = fn;
    cm.tn = tn;
    return ToPython(ToJson(ComputeMetrics(cm)));
  }, py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));
  m.def(
      "threshold_sweep",
      [](const std::vector<double>& probs, const std::vector<int>& labels, const std::vector<double>& extra) {
        return ToPython(ToJson(ThresholdSweep(probs, labels, extra)));
      },
      py::arg("probabilities"), py::arg("labels"), py::arg("extra_thresholds") = std::vector<double>{});
  m.def(
      "mcnemar",
      [](const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& labels, bool cc) {
        return ToPython(ToJson(McNemar(a, b, labels, cc)));
      },
      py::arg("preds_a"), py::arg("preds_b"), py::arg("labels"), py::arg("continuity_correction") = true);
  m.def("spearman", [](const std::vector<double>& xs, const std::vector<double>& ys) {
    const SpearmanResult r = Spearman(xs, ys);
    return py::make_tuple(r.rho, r.p_value);
  });

  m.def(
      "correspondence",
      [](const std::vector<double>& distances, const std::vector<int>& labels, int predicted_class) {
        if (distances.size() != labels.size()) throw Error(ErrorCode::kMismatchedLengths, "distances vs labels");
        std::vector<Neighbor> nb;
        for (std::size_t i = 0; i < distances.size(); ++i) nb.push_back(Neighbor{distances[i], labels[i], {}, {}, i});
        return Correspondence(nb, predicted_class).value;
      },
      py::arg("distances"), py::arg("labels"), py::arg("predicted_class"));

  py::class_<CaseIndex>(m, "CaseIndex")
      .def(py::init([](const Dataset& d, bool standardize) { return CaseIndex(d, CaseIndexOptions{standardize}); }),
           py::arg("train"), py::arg("standardize") = false)
      .def("__len__", &CaseIndex::size)
      .def(
          "knn",
          [](const CaseIndex& index, const std::vector<double>& x, int k) {
            CaseExplanation e;
            e.neighbors = index.Knn(Row(x), k);
            return ToPython(ToJson(e)["neighbors"]);
          },
          py::arg("query"), py::arg("k") = 5);

  m.def("enumerate_properties", [] {
    py::list out;
    for (const auto& p : EnumerateProperties()) {
      py::dict d;
      d["id"] = p.id;
      d["size"] = p.size();
      d["description"] = p.description;
      out.append(d);
    }
    return out;
  });

  m.def(
      "generate_corpus",
      [](const std::string& config_json) {
        const GenConfig config = GenConfig::FromJson(config_json.empty() ? "{}" : config_json);
        py::list out;
        for (const auto& c : GenerateCorpus(config)) {
          py::dict d;
          d["name"] = c.name;
          d["verilog"] = EmitNetlist(c.netlist, DefaultLibrary());
          d["trojan_nets"] = c.trojan_nets;
          out.append(d);
        }
        return out;
      },
      py::arg("config_json") = "", "Synthetic corpus; config as GenConfig JSON (defaults when empty)");
}
