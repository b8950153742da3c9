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

#include "cli.h"

#include <CLI/CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "htxai/attribution.h"
#include "htxai/benchgen.h"
#include "htxai/boosted_trees.h"
#include "htxai/case_explainer.h"
#include "htxai/circuit_graph.h"
#include "htxai/error.h"
#include "htxai/eval_stats.h"
#include "htxai/features.h"
#include "htxai/file_util.h"
#include "htxai/netlist.h"
#include "htxai/property_ensemble.h"
#include "htxai/report.h"

namespace htxai::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kToolVersion = HTXAI_VERSION;

// Failure carrying its own exit code, for conditions that are not module
// errors (usage problems, method/model mismatch, failed self-checks).
struct CliFailure {
  int code;
  std::string message;
};

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

LogLevel LevelFromEnv() {
  const char* v = std::getenv("HTXAI_LOG_LEVEL");
  if (v == nullptr) return LogLevel::kWarn;
  const std::string s(v);
  if (s == "error") return LogLevel::kError;
  if (s == "info") return LogLevel::kInfo;
  if (s == "debug") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err), level_(LevelFromEnv()) {}
  void Warn(const std::string& msg) { Emit(LogLevel::kWarn, "warning", msg); }
  void Info(const std::string& msg) { Emit(LogLevel::kInfo, "info", msg); }
  void Debug(const std::string& msg) { Emit(LogLevel::kDebug, "debug", msg); }

 private:
  void Emit(LogLevel level, const char* tag, const std::string& msg) {
    if (level <= level_) err_ << "htxai: " << tag << ": " << msg << '\n';
  }
  std::ostream& err_;
  LogLevel level_;
};

std::string Fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Shortest text that reads back as the same double.
std::string FmtExact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// JSON config: top-level keys are option names of the main command; nested
// objects address subcommands, e.g. {"train": {"max-depth": 4}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError("config", e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config", "top level must be an object");
    std::vector<CLI::ConfigItem> items;
    Flatten(j, {}, items);
    return items;
  }

 private:
  static std::string Scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void Flatten(const nlohmann::json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        Flatten(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(Scalar(v));
      } else {
        item.inputs.push_back(Scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

const CLI::Validator kParentDirExists(
    [](std::string& path) -> std::string {
      const fs::path parent = fs::path(path).parent_path();
      if (!parent.empty() && !fs::is_directory(parent)) return "directory does not exist: " + parent.string();
      return {};
    },
    "PATH");

Json TypedValue(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  char* end = nullptr;
  const long long i = std::strtoll(s.c_str(), &end, 10);
  if (!s.empty() && *end == '\0') return i;
  const double d = std::strtod(s.c_str(), &end);
  if (!s.empty() && *end == '\0') return d;
  return s;
}

// Effective option values of a subcommand, flags and config file included.
Json ResolvedConfig(const CLI::App& cmd) {
  Json config = Json::object();
  for (const CLI::Option* opt : cmd.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name.empty()) continue;
    if (opt->get_expected_max() == 0) {
      config[name] = opt->count() > 0;
      continue;
    }
    std::vector<std::string> values = opt->results();
    const std::string fallback = opt->get_default_str();
    if (values.empty() && !fallback.empty() && fallback != "{}" && fallback != "[]") values = {fallback};
    const bool list = opt->get_items_expected_max() > 1 ||
                      opt->get_multi_option_policy() == CLI::MultiOptionPolicy::TakeAll;
    if (values.empty() && list) {
      config[name] = Json::array();
    } else if (values.empty()) {
      config[name] = nullptr;
    } else if (!list) {
      config[name] = TypedValue(values[0]);
    } else {
      Json arr = Json::array();
      for (const auto& v : values) arr.push_back(TypedValue(v));
      config[name] = std::move(arr);
    }
  }
  return config;
}

Json ReportHeader(const CLI::App& cmd, const std::vector<std::string>& inputs) {
  Json j;
  j["tool"] = "htxai";
  j["version"] = kToolVersion;
  j["command"] = cmd.get_name();
  Json config = ResolvedConfig(cmd);
  j["config_hash"] = Sha256Hex(config.dump());
  j["config"] = std::move(config);
  Json files = Json::array();
  for (const auto& path : inputs) {
    files.push_back({{"path", path}, {"sha256", Sha256Hex(ReadTextFile(path))}});
  }
  j["inputs"] = std::move(files);
  return j;
}

void WriteJson(const std::string& path, const Json& j) { WriteTextFile(path, j.dump(2) + "\n"); }

std::string SchemaOf(const std::string& text) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return {};
  return j.value("schema", std::string());
}

// ---------------------------------------------------------------- predictions

constexpr std::string_view kPredictionHeader = "circuit,net,line,label,probability,prediction";

struct Predictions {
  std::vector<Provenance> provenance;
  std::vector<int> labels;
  std::vector<double> probabilities;  // empty when only hard predictions exist
  std::vector<int> predictions;
};

std::string PredictionsToCsv(const Predictions& p) {
  std::ostringstream out;
  out << kPredictionHeader << '\n';
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    out << CsvField(p.provenance[i].circuit) << ',' << CsvField(p.provenance[i].net) << ','
        << p.provenance[i].line << ',' << p.labels[i] << ',' << FmtExact(p.probabilities[i]) << ','
        << p.predictions[i] << '\n';
  }
  return out.str();
}

Predictions PredictionsFromCsv(const std::string& path) {
  const std::string text = ReadTextFile(path);
  std::istringstream in(text);
  std::string line;
  Predictions p;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kPredictionHeader) {
        throw Error(ErrorCode::kMalformedCsv, path + ": expected header '" + std::string(kPredictionHeader) + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line, line_no);
    if (f.size() != 6) throw Error(ErrorCode::kMalformedCsv, path + ": line " + std::to_string(line_no) + ": expected 6 fields");
    try {
      p.provenance.push_back({f[0], f[1], std::stoi(f[2])});
      p.labels.push_back(std::stoi(f[3]));
      p.probabilities.push_back(std::stod(f[4]));
      p.predictions.push_back(std::stoi(f[5]));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kMalformedCsv, path + ": line " + std::to_string(line_no) + ": bad number");
    }
    if ((p.labels.back() | p.predictions.back()) & ~1) {
      throw Error(ErrorCode::kMalformedCsv, path + ": line " + std::to_string(line_no) + ": labels must be 0 or 1");
    }
  }
  if (line_no == 0) throw Error(ErrorCode::kMalformedCsv, path + ": empty prediction file");
  return p;
}

Predictions PredictDataset(const BoostedTreeModel& model, const Dataset& data, double threshold) {
  Predictions p;
  for (const auto& s : data.samples) {
    const double prob = model.PredictProba(s.features.ToRow());
    p.provenance.push_back(s.provenance);
    p.labels.push_back(s.label);
    p.probabilities.push_back(prob);
    p.predictions.push_back(prob >= threshold ? 1 : 0);
  }
  return p;
}

std::vector<int> Threshold(std::span<const double> probs, double t) {
  std::vector<int> out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) out[i] = probs[i] >= t ? 1 : 0;
  return out;
}

void CheckThreshold(double t) {
  if (!(t > 0.0 && t < 1.0)) throw CliFailure{kUsage, "threshold must lie in (0, 1), got " + FmtExact(t)};
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
  std::vector<std::string> netlists;
  std::string netlist_dir;
  std::string library;
  std::string labels;
  std::string out;
  std::int64_t sentinel = 0;
  CLI::Option* sentinel_opt = nullptr;
};

int CmdExtract(const CLI::App& cmd, const ExtractArgs& a, std::ostream& out, Log& log) {
  std::vector<std::string> files = a.netlists;
  if (!a.netlist_dir.empty()) {
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(a.netlist_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".v") found.push_back(entry.path().string());
    }
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  if (files.empty()) throw CliFailure{kUsage, "no netlists given (use --netlist or --netlist-dir)"};

  const CellLibrary lib = a.library.empty() ? CellLibrary::Default() : CellLibrary::FromFile(a.library);
  const LabelMap labels = a.labels.empty() ? LabelMap{} : LoadLabelsFile(a.labels);
  ExtractOptions options;
  if (a.sentinel_opt->count() > 0) options.fixed_sentinel = a.sentinel;

  Dataset all;
  Json circuits = Json::array();
  Json warnings = Json::array();
  std::set<std::string> names;
  for (const auto& file : files) {
    const Netlist netlist = ParseNetlistFile(file, lib);
    const std::string& name = netlist.module_name;
    if (!names.insert(name).second) throw CliFailure{kBadInput, file + ": duplicate circuit name '" + name + "'"};
    const CircuitGraph graph = BuildGraph(netlist, lib);
    const auto it = labels.find(name);
    const LabelReport resolved = ResolveLabels(graph, it == labels.end() ? std::set<std::string>{} : it->second);
    for (const auto& net : resolved.unknown_nets) {
      log.Warn("UnknownNet: label '" + net + "' is not a gate output in circuit '" + name + "'");
      warnings.push_back({{"code", "UnknownNet"}, {"circuit", name}, {"net", net}});
    }
    Dataset d = ExtractAll(graph, resolved.trojan_nets, name, options);
    const auto counts = d.class_counts();
    circuits.push_back({{"circuit", name},
                        {"file", file},
                        {"nets", d.size()},
                        {"trojan_nets", counts.n_trojan},
                        {"sentinel", d.sentinels.at(name)}});
    log.Debug(name + ": " + std::to_string(d.size()) + " nets");
    all.Append(d);
  }
  for (const auto& [circuit, nets] : labels) {
    if (!names.count(circuit)) {
      log.Warn("labels name circuit '" + circuit + "' which was not among the netlists");
      warnings.push_back({{"code", "UnknownCircuit"}, {"circuit", circuit}});
    }
  }

  WriteTextFile(a.out, DatasetToCsv(all));
  std::vector<std::string> inputs = files;
  if (!a.library.empty()) inputs.push_back(a.library);
  if (!a.labels.empty()) inputs.push_back(a.labels);
  Json meta = ReportHeader(cmd, inputs);
  const auto counts = all.class_counts();
  meta["rows"] = all.size();
  meta["class_counts"] = {{"benign", counts.n_benign}, {"trojan", counts.n_trojan}};
  meta["circuits"] = std::move(circuits);
  meta["warnings"] = std::move(warnings);
  WriteJson(a.out + ".meta.json", meta);
  out << "wrote " << all.size() << " rows (benign " << counts.n_benign << ", trojan " << counts.n_trojan
      << ") from " << files.size() << " circuit(s) to " << a.out << '\n';
  return kOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string features;
  std::string out;
  std::string ensemble;
  std::string report;
  std::string train_out;
  std::string test_out;
  double test_fraction = 0.0;
  TrainConfig config;
  double positive_class_weight = 1.0;
  CLI::Option* weight_opt = nullptr;
  double validation_fraction = 0.2;
};

int CmdTrain(const CLI::App& cmd, TrainArgs a, std::ostream& out, Log& log) {
  if (a.weight_opt->count() > 0) a.config.positive_class_weight = a.positive_class_weight;
  a.config.Validate();
  Dataset data = DatasetFromCsv(ReadTextFile(a.features));
  Dataset train;
  if (a.test_fraction > 0.0) {
    Split split = StratifiedSplit(data, {a.test_fraction, a.config.seed, true});
    train = std::move(split.train);
    if (!a.test_out.empty()) WriteTextFile(a.test_out, DatasetToCsv(split.test));
    out << "split: train " << train.size() << " rows, test " << split.test.size() << " rows\n";
  } else {
    if (!a.test_out.empty()) throw CliFailure{kUsage, "--test-out requires --test-fraction > 0"};
    train = std::move(data);
  }
  if (!a.train_out.empty()) WriteTextFile(a.train_out, DatasetToCsv(train));

  const auto counts = train.class_counts();
  out << "class counts: benign=" << counts.n_benign << " trojan=" << counts.n_trojan << '\n';
  TrainDiagnostics diag;
  const BoostedTreeModel model = TrainBoostedTrees(train, a.config, &diag);
  out << "positive_class_weight=" << FmtExact(diag.positive_class_weight) << '\n';
  for (const auto& w : diag.warnings) log.Warn(w);
  model.Save(a.out);
  out << "model: " << model.trees().size() << " trees -> " << a.out << '\n';

  Json report = ReportHeader(cmd, {a.features});
  report["class_counts"] = {{"benign", counts.n_benign}, {"trojan", counts.n_trojan}};
  report["positive_class_weight"] = diag.positive_class_weight;
  report["model"] = {{"path", a.out}, {"sha256", Sha256Hex(model.ToJson())}, {"trees", model.trees().size()}};
  report["loss_history"] = diag.loss_history;
  report["warnings"] = diag.warnings;

  if (!a.ensemble.empty()) {
    EnsembleOptions eo;
    eo.seed = a.config.seed;
    eo.validation_fraction = a.validation_fraction;
    TrainConfig member_config = a.config;
    member_config.positive_class_weight = diag.positive_class_weight;
    const PropertyEnsemble ensemble = TrainEnsemble(train, member_config, eo);
    const std::string text = ensemble.ToJson();
    WriteTextFile(a.ensemble, text);
    out << "ensemble: " << ensemble.members().size() << " members -> " << a.ensemble << '\n';
    Json members = Json::array();
    for (const auto& m : ensemble.members()) {
      members.push_back({{"property", m.descriptor.id},
                         {"description", m.descriptor.description},
                         {"effectiveness", {m.effectiveness[0], m.effectiveness[1]}}});
    }
    report["ensemble"] = {{"path", a.ensemble}, {"sha256", Sha256Hex(text)}, {"members", std::move(members)}};
  }
  if (!a.report.empty()) WriteJson(a.report, report);
  return kOk;
}

// ---------------------------------------------------------------- explain

struct ExplainArgs {
  std::string method;
  std::string model;
  std::string features;
  std::string train;
  std::string out;
  int k = 5;
  std::string case_mode = "model";
  bool standardize = false;
  double threshold = 0.5;
  double review_threshold = kDefaultReviewThreshold;
  PerturbationConfig perturbation;
};

int CmdExplain(const CLI::App& cmd, const ExplainArgs& a, std::ostream& out, Log& log) {
  a.perturbation.Validate();
  CheckThreshold(a.threshold);
  const bool needs_model = !(a.method == "case" && a.case_mode == "knn");
  const bool needs_train = a.method == "case" || a.method == "lime" || a.method == "shap";
  if (needs_model && a.model.empty()) throw CliFailure{kUsage, "--model is required for method " + a.method};
  if (needs_train && a.train.empty()) throw CliFailure{kUsage, "--train is required for method " + a.method};
  if (a.k < 1) throw CliFailure{kUsage, "--k must be >= 1"};

  std::optional<BoostedTreeModel> model;
  std::optional<PropertyEnsemble> ensemble;
  if (needs_model) {
    const std::string text = ReadTextFile(a.model);
    const std::string schema = SchemaOf(text);
    const bool wants_ensemble = a.method == "property";
    if (wants_ensemble && schema == BoostedTreeModel::kSchema) {
      throw CliFailure{kModelMismatch, "method 'property' needs an ensemble file; " + a.model + " holds a boosted-tree model"};
    }
    if (!wants_ensemble && schema == PropertyEnsemble::kSchema) {
      throw CliFailure{kModelMismatch, "method '" + a.method + "' needs a boosted-tree model; " + a.model + " holds a property ensemble"};
    }
    if (wants_ensemble) {
      ensemble = PropertyEnsemble::FromJson(text);
    } else {
      model = BoostedTreeModel::FromJson(text);
    }
  }

  const Dataset data = DatasetFromCsv(ReadTextFile(a.features));
  Dataset train;
  if (!a.train.empty()) train = DatasetFromCsv(ReadTextFile(a.train));
  const std::vector<FeatureRow> train_rows = train.Rows();

  std::optional<CaseIndex> index;
  if (a.method == "case") index.emplace(train, CaseIndexOptions{a.standardize});
  std::optional<TrainStats> stats;
  if (a.method == "lime") stats = TrainStats::FromRows(train_rows);
  std::vector<FeatureRow> background;
  std::optional<ShapleyExplainer> shapley;
  if (a.method == "shap") {
    background = SampleBackground(train_rows, a.perturbation.background_size, a.perturbation.seed);
    shapley.emplace(*model, background);
  }
  const auto descriptors = EnumerateProperties();

  Json records = Json::array();
  double total_ns = 0.0;
  double max_la_error = 0.0;
  std::size_t review_count = 0;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const LabeledSample& s = data.samples[i];
    const FeatureRow x = s.features.ToRow();
    Json rec;
    rec["row"] = i;
    rec["circuit"] = s.provenance.circuit;
    rec["net"] = s.provenance.net;
    rec["line"] = s.provenance.line;
    rec["label"] = s.label;
    std::int64_t ns = 0;
    Json body;
    if (a.method == "property") {
      const auto start = std::chrono::steady_clock::now();
      const VoteResult vote = ensemble->PredictWeightedVote(x);
      const PropertyExplanation e = ExplainProperty(vote, descriptors, s.features);
      ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
      body = ToJson(e);
    } else if (a.method == "case") {
      const auto start = std::chrono::steady_clock::now();
      auto neighbors = index->Knn(x, a.k);
      std::optional<double> prob;
      int pred = 0;
      if (model) {
        prob = model->PredictProba(x);
        pred = *prob >= a.threshold ? 1 : 0;
      } else {
        pred = NeighborMajority(neighbors);
      }
      const CaseExplanation e = ExplainCase(pred, prob, std::move(neighbors), a.review_threshold);
      ns = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
      review_count += e.manual_review ? 1 : 0;
      body = ToJson(e);
    } else {
      AttributionVector v;
      if (a.method == "lime") {
        v = LimeExplain(*model, x, *stats, a.perturbation, i);
        if (v.ridge_fallback) log.Warn("row " + std::to_string(i) + ": lime regression used the ridge fallback");
      } else if (a.method == "shap") {
        v = shapley->Explain(x);
      } else {
        v = GradientExplain(*model, x, a.perturbation.epsilon);
      }
      ns = v.wall_time_ns;
      body = ToJson(v, x);
      const double prob = model->PredictProba(x);
      body["probability"] = prob;
      body["prediction"] = prob >= a.threshold ? 1 : 0;
      if (a.method == "shap") {
        double sum = 0.0;
        for (double phi : v.values) sum += phi;
        const double err = std::abs(sum - (prob - v.baseline));
        max_la_error = std::max(max_la_error, err);
        body["local_accuracy_error"] = err;
      }
    }
    body["wall_time_ns"] = ns;
    total_ns += static_cast<double>(ns);
    rec.update(body);
    records.push_back(std::move(rec));
  }

  std::vector<std::string> inputs = {a.features};
  if (!a.model.empty() && needs_model) inputs.push_back(a.model);
  if (!a.train.empty()) inputs.push_back(a.train);
  Json report = ReportHeader(cmd, inputs);
  report["method"] = a.method;
  Json summary;
  summary["records"] = records.size();
  summary["coverage"] = data.samples.empty() ? 1.0 : static_cast<double>(records.size()) / data.samples.size();
  summary["mean_wall_time_ns"] = records.empty() ? 0.0 : total_ns / records.size();
  if (a.method == "shap") summary["max_local_accuracy_error"] = max_la_error;
  if (a.method == "case") summary["manual_review"] = review_count;
  report["summary"] = summary;
  report["records"] = std::move(records);
  WriteJson(a.out, report);
  out << a.method << ": " << data.samples.size() << " records, mean " << Fmt(summary["mean_wall_time_ns"].get<double>() / 1e6, 4)
      << " ms/sample -> " << a.out << '\n';
  if (a.method == "shap" && max_la_error > 1e-9) {
    throw CliFailure{kInternal, "shapley local-accuracy self-check failed (max error " + FmtExact(max_la_error) + ")"};
  }
  return kOk;
}

// ---------------------------------------------------------------- evaluate / sweep

struct ScoreSource {
  std::string model;
  std::string features;
  std::string predictions;
};

// Probabilities and labels from either a model applied to a feature CSV or a
// prediction file.
Predictions LoadScores(const ScoreSource& src, std::vector<std::string>& inputs) {
  if (!src.predictions.empty()) {
    if (!src.model.empty() || !src.features.empty()) {
      throw CliFailure{kUsage, "--predictions excludes --model/--features"};
    }
    inputs.push_back(src.predictions);
    return PredictionsFromCsv(src.predictions);
  }
  if (src.model.empty() || src.features.empty()) {
    throw CliFailure{kUsage, "need --model with --features, or --predictions"};
  }
  const std::string text = ReadTextFile(src.model);
  if (SchemaOf(text) == PropertyEnsemble::kSchema) {
    throw CliFailure{kModelMismatch, src.model + " holds a property ensemble; scoring needs a boosted-tree model"};
  }
  const BoostedTreeModel model = BoostedTreeModel::FromJson(text);
  inputs.push_back(src.model);
  inputs.push_back(src.features);
  return PredictDataset(model, DatasetFromCsv(ReadTextFile(src.features)), 0.5);
}

struct EvaluateArgs {
  ScoreSource src;
  std::vector<std::int64_t> confusion;
  std::vector<double> thresholds;
  std::vector<std::string> compare;
  std::string out;
  std::string predictions_out;
  int bootstrap = 10000;
  std::uint64_t seed = 42;
  double confidence = 0.95;
  double alpha = 0.05;
  bool continuity_correction = true;
};

MetricsReport MetricsWithCi(std::span<const int> preds, std::span<const int> labels, const EvaluateArgs& a) {
  MetricsReport m = ComputeMetrics(ConfusionMatrix::FromPredictions(preds, labels));
  if (a.bootstrap > 0) {
    auto ci = [&](Metric metric) {
      return BootstrapCi(preds, labels, metric, static_cast<std::size_t>(a.bootstrap), a.seed, a.confidence).ci;
    };
    m.precision_ci = ci(Metric::kPrecision);
    m.recall_ci = ci(Metric::kRecall);
    m.f1_ci = ci(Metric::kF1);
    m.accuracy_ci = ci(Metric::kAccuracy);
    m.fpr_ci = ci(Metric::kFpr);
  }
  return m;
}

void PrintMetricsLine(std::ostream& out, const std::string& tag, const ConfusionMatrix& cm, const MetricsReport& m) {
  out << tag << " tp=" << cm.tp << " fp=" << cm.fp << " fn=" << cm.fn << " tn=" << cm.tn
      << " precision=" << Fmt(m.precision.value, 4) << " recall=" << Fmt(m.recall.value, 4)
      << " f1=" << Fmt(m.f1.value, 4) << " accuracy=" << Fmt(m.accuracy.value, 4)
      << " fpr=" << Fmt(m.fpr.value, 4) << '\n';
}

int CmdEvaluate(const CLI::App& cmd, EvaluateArgs a, std::ostream& out) {
  if (a.bootstrap != 0 && a.bootstrap < 100) throw CliFailure{kUsage, "--bootstrap must be 0 or >= 100"};
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw CliFailure{kUsage, "--alpha must lie in (0, 1)"};
  if (a.thresholds.empty()) a.thresholds = {0.5};
  for (double t : a.thresholds) CheckThreshold(t);

  std::vector<std::string> inputs;
  Json report = Json::object();
  Json evaluations = Json::array();
  std::vector<std::pair<std::string, McNemarResult>> tests;
  const bool have_source = !a.src.predictions.empty() || !a.src.model.empty() || !a.src.features.empty();

  if (!a.confusion.empty()) {
    if (have_source) throw CliFailure{kUsage, "--confusion excludes --model/--features/--predictions"};
    for (auto c : a.confusion) {
      if (c < 0) throw CliFailure{kUsage, "--confusion counts must be >= 0"};
    }
    const ConfusionMatrix cm{a.confusion[0], a.confusion[1], a.confusion[3], a.confusion[2]};
    if (cm.total() == 0) throw CliFailure{kUsage, "--confusion total must be > 0"};
    // Expand to paired vectors so the bootstrap can resample them.
    std::vector<int> preds, labels;
    auto add = [&](std::int64_t n, int p, int l) {
      preds.insert(preds.end(), n, p);
      labels.insert(labels.end(), n, l);
    };
    add(cm.tp, 1, 1);
    add(cm.fp, 1, 0);
    add(cm.fn, 0, 1);
    add(cm.tn, 0, 0);
    const MetricsReport m = MetricsWithCi(preds, labels, a);
    PrintMetricsLine(out, "confusion", cm, m);
    evaluations.push_back({{"threshold", nullptr}, {"confusion", ToJson(cm)}, {"metrics", ToJson(m)}});
  } else if (have_source) {
    Predictions p = LoadScores(a.src, inputs);
    std::vector<std::vector<int>> per_threshold;
    for (double t : a.thresholds) {
      auto preds = Threshold(p.probabilities, t);
      const ConfusionMatrix cm = ConfusionMatrix::FromPredictions(preds, p.labels);
      const MetricsReport m = MetricsWithCi(preds, p.labels, a);
      PrintMetricsLine(out, "threshold=" + FmtExact(t), cm, m);
      evaluations.push_back({{"threshold", t}, {"confusion", ToJson(cm)}, {"metrics", ToJson(m)}});
      per_threshold.push_back(std::move(preds));
    }
    for (std::size_t i = 0; i < a.thresholds.size(); ++i) {
      for (std::size_t j = i + 1; j < a.thresholds.size(); ++j) {
        tests.emplace_back("threshold " + FmtExact(a.thresholds[i]) + " vs " + FmtExact(a.thresholds[j]),
                           McNemar(per_threshold[i], per_threshold[j], p.labels, a.continuity_correction));
      }
    }
    const bool both_classes = std::count(p.labels.begin(), p.labels.end(), 1) > 0 &&
                              std::count(p.labels.begin(), p.labels.end(), 0) > 0;
    if (both_classes) {
      const SweepResult sweep = ThresholdSweep(p.probabilities, p.labels, a.thresholds);
      out << "best threshold " << FmtExact(sweep.best_threshold) << '\n';
      report["sweep"] = ToJson(sweep);
    }
    if (!a.predictions_out.empty()) {
      p.predictions = per_threshold.front();
      WriteTextFile(a.predictions_out, PredictionsToCsv(p));
    }
  } else if (a.compare.empty()) {
    throw CliFailure{kUsage, "nothing to evaluate: give --confusion, --model with --features, --predictions or --compare"};
  }

  if (!a.compare.empty()) {
    const Predictions pa = PredictionsFromCsv(a.compare[0]);
    const Predictions pb = PredictionsFromCsv(a.compare[1]);
    inputs.push_back(a.compare[0]);
    inputs.push_back(a.compare[1]);
    if (pa.labels.size() != pb.labels.size()) {
      throw Error(ErrorCode::kMismatchedLengths, a.compare[0] + " has " + std::to_string(pa.labels.size()) +
                                                     " rows, " + a.compare[1] + " has " + std::to_string(pb.labels.size()));
    }
    if (pa.labels != pb.labels) throw CliFailure{kBadInput, "compared prediction files disagree on labels"};
    tests.emplace_back(a.compare[0] + " vs " + a.compare[1],
                       McNemar(pa.predictions, pb.predictions, pa.labels, a.continuity_correction));
  }

  Json header = ReportHeader(cmd, inputs);
  header.update(report);
  report = std::move(header);
  report["evaluations"] = std::move(evaluations);
  Json pairwise = Json::array();
  std::vector<double> pvalues;
  for (const auto& [name, r] : tests) pvalues.push_back(r.p_value);
  if (!tests.empty()) {
    const BonferroniResult bf = Bonferroni(pvalues, a.alpha);
    for (std::size_t i = 0; i < tests.size(); ++i) {
      Json t = {{"comparison", tests[i].first}, {"test", "mcnemar"}};
      t["continuity_correction"] = a.continuity_correction;
      t.update(ToJson(tests[i].second));
      t["reject"] = static_cast<bool>(bf.reject[i]);
      pairwise.push_back(std::move(t));
      out << "mcnemar " << tests[i].first << ": chi2=" << Fmt(tests[i].second.statistic, 4)
          << " p=" << FmtExact(tests[i].second.p_value) << (bf.reject[i] ? " (significant)" : "") << '\n';
    }
    report["bonferroni"] = {{"alpha", a.alpha}, {"k", tests.size()}, {"threshold", bf.threshold}};
  }
  report["pairwise"] = std::move(pairwise);
  report["bootstrap"] = {{"iterations", a.bootstrap}, {"seed", a.seed}, {"confidence", a.confidence}};
  if (!a.out.empty()) WriteJson(a.out, report);
  return kOk;
}

struct SweepArgs {
  ScoreSource src;
  std::vector<double> extra;
  std::string out;
};

int CmdSweep(const CLI::App& cmd, const SweepArgs& a, std::ostream& out) {
  for (double t : a.extra) CheckThreshold(t);
  std::vector<std::string> inputs;
  const Predictions p = LoadScores(a.src, inputs);
  const SweepResult sweep = ThresholdSweep(p.probabilities, p.labels, a.extra);
  const auto best = std::find_if(sweep.rows.begin(), sweep.rows.end(),
                                 [&](const SweepRow& r) { return r.threshold == sweep.best_threshold; });
  out << "best threshold " << FmtExact(sweep.best_threshold) << " f1=" << Fmt(best->metrics.f1.value, 4)
      << " (" << sweep.rows.size() << " thresholds)\n";
  for (const auto& r : sweep.rows) {
    if (r.threshold == 0.5 || r.threshold == 0.99) {
      PrintMetricsLine(out, "threshold=" + FmtExact(r.threshold), r.cm, r.metrics);
    }
  }
  Json report = ReportHeader(cmd, inputs);
  report["sweep"] = ToJson(sweep);
  if (!a.out.empty()) WriteJson(a.out, report);
  return kOk;
}

// ---------------------------------------------------------------- benchgen

struct BenchgenArgs {
  GenConfig config;
  std::vector<int> gates{200, 1500}, pis{8, 32}, pos{4, 16}, decoys{0, 2};
  std::string out;
};

int CmdBenchgen(BenchgenArgs a, std::ostream& out) {
  a.config.gates_per_circuit = {a.gates[0], a.gates[1]};
  a.config.pi_count = {a.pis[0], a.pis[1]};
  a.config.po_count = {a.pos[0], a.pos[1]};
  a.config.decoys_per_circuit = {a.decoys[0], a.decoys[1]};
  a.config.Validate();
  const std::string manifest = WriteCorpus(a.config, a.out);
  const auto j = nlohmann::json::parse(manifest);
  int infected = 0;
  for (const auto& c : j["circuits"]) infected += c["trojan"].get<bool>() ? 1 : 0;
  out << "wrote " << j["circuits"].size() << " circuits (" << infected << " with trojans) to " << a.out
      << "; manifest sha256 " << Sha256Hex(manifest) << '\n';
  return kOk;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSingleClassDataset:
      return kSingleClass;
    case ErrorCode::kMismatchedLengths:
      return kLengthMismatch;
    case ErrorCode::kInfeasibleConfig:
      return kInfeasible;
    case ErrorCode::kCorruptModel:
    case ErrorCode::kSchemaVersionMismatch:
      return kBadModel;
    case ErrorCode::kIo:
    case ErrorCode::kInvalidArgument:
      return kUsage;
    default:
      return kBadInput;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explainable hardware trojan detection on gate-level netlists", "htxai"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; nested objects per subcommand");
  Log log(err);

  // extract
  ExtractArgs ex;
  CLI::App* extract = app.add_subcommand("extract", "Parse netlists and write the per-net feature CSV");
  extract->add_option("--netlist,netlists", ex.netlists, "Structural Verilog file(s)")->check(CLI::ExistingFile);
  extract->add_option("--netlist-dir", ex.netlist_dir, "Directory of .v files")->check(CLI::ExistingDirectory);
  extract->add_option("--library", ex.library, "Cell library JSON (default: built-in)")->check(CLI::ExistingFile);
  extract->add_option("--labels", ex.labels, "Label JSON {circuit: [nets]}")->check(CLI::ExistingFile);
  extract->add_option("-o,--out", ex.out, "Feature CSV to write")->required()->check(kParentDirExists);
  ex.sentinel_opt = extract->add_option("--sentinel", ex.sentinel, "Fixed value for unreachable distances")
                        ->check(CLI::NonNegativeNumber);

  // train
  TrainArgs tr;
  CLI::App* train = app.add_subcommand("train", "Train the boosted-tree detector");
  train->add_option("--features", tr.features, "Training feature CSV")->required()->check(CLI::ExistingFile);
  train->add_option("-o,--out", tr.out, "Model JSON to write")->required()->check(kParentDirExists);
  train->add_option("--ensemble", tr.ensemble, "Also train the 31-member property ensemble")->check(kParentDirExists);
  train->add_option("--report", tr.report, "Training report JSON")->check(kParentDirExists);
  train->add_option("--test-fraction", tr.test_fraction, "Hold out a stratified test split first")
      ->check(CLI::Range(0.0, 0.9));
  train->add_option("--test-out", tr.test_out, "Write the held-out rows as CSV")->check(kParentDirExists);
  train->add_option("--train-out", tr.train_out, "Write the training rows as CSV")->check(kParentDirExists);
  train->add_option("--n-estimators", tr.config.n_estimators);
  train->add_option("--max-depth", tr.config.max_depth);
  train->add_option("--learning-rate", tr.config.learning_rate);
  tr.weight_opt = train->add_option("--positive-class-weight", tr.positive_class_weight,
                                    "Default: N_benign / N_trojan of the training rows")
                      ->default_str("");
  train->add_option("--l2", tr.config.l2_leaf_regularization);
  train->add_option("--min-child-weight", tr.config.min_child_weight);
  train->add_option("--validation-fraction", tr.validation_fraction, "Ensemble weighting slice");
  train->add_option("--seed", tr.config.seed);

  // explain
  ExplainArgs xp;
  CLI::App* explain = app.add_subcommand("explain", "Explain predictions row by row");
  explain->add_option("--method", xp.method)
      ->required()
      ->check(CLI::IsMember({"property", "case", "lime", "shap", "gradient"}));
  explain->add_option("--model", xp.model, "Model or ensemble JSON")->check(CLI::ExistingFile);
  explain->add_option("--features", xp.features, "Rows to explain")->required()->check(CLI::ExistingFile);
  explain->add_option("--train", xp.train, "Training CSV (case index, lime pools, shap background)")
      ->check(CLI::ExistingFile);
  explain->add_option("-o,--out", xp.out, "Explanation JSON to write")->required()->check(kParentDirExists);
  explain->add_option("--k", xp.k, "Neighbours for method=case");
  explain->add_option("--case-mode", xp.case_mode, "model: boosted-tree decision; knn: neighbour majority")
      ->check(CLI::IsMember({"model", "knn"}));
  explain->add_flag("--standardize", xp.standardize, "Standardize features before k-NN distances");
  explain->add_option("--threshold", xp.threshold, "Decision threshold for predictions");
  explain->add_option("--review-threshold", xp.review_threshold, "Correspondence below this flags manual review");
  explain->add_option("--n-samples", xp.perturbation.n_samples);
  explain->add_option("--kernel-width", xp.perturbation.kernel_width)->default_str(FmtExact(xp.perturbation.kernel_width));
  explain->add_option("--epsilon", xp.perturbation.epsilon);
  explain->add_option("--background-size", xp.perturbation.background_size);
  explain->add_option("--seed", xp.perturbation.seed);

  // evaluate
  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Metrics, bootstrap intervals and paired tests");
  evaluate->add_option("--model", ev.src.model)->check(CLI::ExistingFile);
  evaluate->add_option("--features", ev.src.features, "Test feature CSV")->check(CLI::ExistingFile);
  evaluate->add_option("--predictions", ev.src.predictions, "Prediction CSV instead of a model")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--confusion", ev.confusion, "TP FP FN TN")->expected(4);
  evaluate->add_option("--threshold", ev.thresholds, "Decision threshold; repeatable")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  evaluate->add_option("--compare", ev.compare, "Two prediction CSVs for McNemar")->expected(2)->check(CLI::ExistingFile);
  evaluate->add_option("-o,--out", ev.out, "Evaluation report JSON")->check(kParentDirExists);
  evaluate->add_option("--predictions-out", ev.predictions_out, "Prediction CSV at the first threshold")
      ->check(kParentDirExists);
  evaluate->add_option("--bootstrap", ev.bootstrap, "Bootstrap iterations (0 disables)");
  evaluate->add_option("--seed", ev.seed);
  evaluate->add_option("--confidence", ev.confidence)->check(CLI::Range(0.5, 0.999));
  evaluate->add_option("--alpha", ev.alpha, "Family-wise significance level");
  evaluate->add_flag("!--no-continuity-correction", ev.continuity_correction);

  // sweep
  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "Find the F1-optimal decision threshold");
  sweep->add_option("--model", sw.src.model)->check(CLI::ExistingFile);
  sweep->add_option("--features", sw.src.features)->check(CLI::ExistingFile);
  sweep->add_option("--predictions", sw.src.predictions)->check(CLI::ExistingFile);
  sweep->add_option("--extra-threshold", sw.extra, "Additional thresholds to evaluate");
  sweep->add_option("-o,--out", sw.out, "Sweep report JSON")->check(kParentDirExists);

  // benchgen
  BenchgenArgs bg;
  CLI::App* benchgen = app.add_subcommand("benchgen", "Generate a synthetic labelled corpus");
  benchgen->add_option("-o,--out", bg.out, "Output directory")->required();
  benchgen->add_option("--n-circuits", bg.config.n_circuits);
  benchgen->add_option("--gates", bg.gates, "Gates per circuit: LO HI")->expected(2);
  benchgen->add_option("--pis", bg.pis, "Primary inputs: LO HI")->expected(2);
  benchgen->add_option("--pos", bg.pos, "Primary outputs: LO HI")->expected(2);
  benchgen->add_option("--decoys", bg.decoys, "Benign decoder structures per circuit: LO HI")->expected(2);
  benchgen->add_option("--ff-fraction", bg.config.ff_fraction);
  benchgen->add_option("--trojan-fraction", bg.config.trojan_fraction_of_circuits)
      ->default_str(FmtExact(bg.config.trojan_fraction_of_circuits));
  benchgen->add_option("--trigger-width", bg.config.trigger_width);
  benchgen->add_option("--seed", bg.config.seed);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (extract->parsed()) return CmdExtract(*extract, ex, out, log);
    if (train->parsed()) return CmdTrain(*train, tr, out, log);
    if (explain->parsed()) return CmdExplain(*explain, xp, out, log);
    if (evaluate->parsed()) return CmdEvaluate(*evaluate, ev, out);
    if (sweep->parsed()) return CmdSweep(*sweep, sw, out);
    if (benchgen->parsed()) return CmdBenchgen(bg, out);
  } catch (const CliFailure& f) {
    err << "htxai: error: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "htxai: error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "htxai: error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace htxai::cli
