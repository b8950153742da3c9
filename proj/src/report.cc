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

#include "htxai/report.h"

namespace htxai {

namespace {

Json RatioJson(const Ratio& r, const std::optional<Interval>& ci) {
  Json j;
  j["value"] = r.value;
  j["defined"] = r.defined;
  if (ci) j["ci"] = {ci->lo, ci->hi};
  return j;
}

Json FeatureMap(const std::array<double, kNumFeatures>& values) {
  Json j = Json::object();
  for (int i = 0; i < kNumFeatures; ++i) j[std::string(kFeatureNames[i])] = values[i];
  return j;
}

}  // namespace

Json ToJson(const ConfusionMatrix& cm) {
  return Json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

Json ToJson(const MetricsReport& m) {
  Json j;
  j["precision"] = RatioJson(m.precision, m.precision_ci);
  j["recall"] = RatioJson(m.recall, m.recall_ci);
  j["f1"] = RatioJson(m.f1, m.f1_ci);
  j["accuracy"] = RatioJson(m.accuracy, m.accuracy_ci);
  j["fpr"] = RatioJson(m.fpr, m.fpr_ci);
  j["specificity"] = RatioJson(m.specificity, std::nullopt);
  return j;
}

Json ToJson(const SweepResult& sweep) {
  Json rows = Json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back({{"threshold", row.threshold},
                    {"confusion", ToJson(row.cm)},
                    {"precision", row.metrics.precision.value},
                    {"recall", row.metrics.recall.value},
                    {"f1", row.metrics.f1.value},
                    {"fpr", row.metrics.fpr.value},
                    {"accuracy", row.metrics.accuracy.value}});
  }
  return Json{{"best_threshold", sweep.best_threshold}, {"rows", std::move(rows)}};
}

Json ToJson(const McNemarResult& r) {
  return Json{{"statistic", r.statistic}, {"p_value", r.p_value}, {"b", r.b}, {"c", r.c}};
}

Json ToJson(const Provenance& p) {
  return Json{{"circuit", p.circuit}, {"net", p.net}, {"line", p.line}};
}

Json ToJson(const CaseExplanation& e) {
  Json j;
  j["prediction"] = e.prediction;
  j["probability"] = e.probability ? Json(*e.probability) : Json(nullptr);
  j["correspondence"] = e.correspondence.value;
  j["class_weights"] = {e.correspondence.class_weights[0], e.correspondence.class_weights[1]};
  j["manual_review"] = e.manual_review;
  Json neighbors = Json::array();
  for (const auto& n : e.neighbors) {
    neighbors.push_back({{"distance", n.distance},
                         {"label", n.label},
                         {"circuit", n.provenance.circuit},
                         {"net", n.provenance.net},
                         {"line", n.provenance.line}});
  }
  j["neighbors"] = std::move(neighbors);
  return j;
}

Json ToJson(const AttributionVector& a, const FeatureRow& x) {
  Json j;
  j["method"] = std::string(AttributionMethodName(a.method));
  j["feature_values"] = FeatureMap(x);
  j["attributions"] = FeatureMap(a.values);
  j["baseline"] = a.baseline;
  Json ranking = Json::array();
  for (int i : RankFeatures(a.values)) ranking.push_back(std::string(kFeatureNames[i]));
  j["ranking"] = std::move(ranking);
  if (a.method == AttributionMethod::kLime) j["ridge_fallback"] = a.ridge_fallback;
  j["wall_time_ns"] = a.wall_time_ns;
  return j;
}

Json ToJson(const PropertyExplanation& e) {
  Json j;
  j["prediction"] = e.predicted_class;
  j["confidence"] = {e.per_class_confidence[0], e.per_class_confidence[1]};
  Json patterns = Json::array();
  for (const auto& p : e.patterns) {
    patterns.push_back({{"property", p.property_id}, {"weight", p.weight}, {"text", p.text}});
  }
  j["patterns"] = std::move(patterns);
  return j;
}

}  // namespace htxai
