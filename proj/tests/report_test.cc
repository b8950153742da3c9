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

#include "gtest/gtest.h"

namespace htxai {
namespace {

std::vector<std::string> Keys(const Json& j) {
  std::vector<std::string> out;
  for (const auto& [k, v] : j.items()) out.push_back(k);
  return out;
}

TEST(Report, MetricsCarryDefinednessAndOptionalCi) {
  MetricsReport m = ComputeMetrics(ConfusionMatrix{24, 28, 11318, 22});
  m.f1_ci = Interval{0.25, 0.7};
  const Json j = ToJson(m);
  EXPECT_EQ(Keys(j), (std::vector<std::string>{"precision", "recall", "f1", "accuracy", "fpr", "specificity"}));
  EXPECT_NEAR(j["precision"]["value"].get<double>(), 24.0 / 52.0, 1e-15);
  EXPECT_TRUE(j["recall"]["defined"].get<bool>());
  EXPECT_FALSE(j["recall"].contains("ci"));
  EXPECT_EQ(j["f1"]["ci"], Json({0.25, 0.7}));

  const Json none = ToJson(ComputeMetrics(ConfusionMatrix{0, 0, 0, 5}));
  EXPECT_FALSE(none["precision"]["defined"].get<bool>());
  EXPECT_EQ(none["precision"]["value"].get<double>(), 0.0);
}

TEST(Report, ConfusionAndMcNemar) {
  EXPECT_EQ(ToJson(ConfusionMatrix{1, 2, 4, 3}).dump(), R"({"tp":1,"fp":2,"fn":3,"tn":4})");
  const Json j = ToJson(McNemarResult{4.5, 0.0339, 9, 1});
  EXPECT_EQ(Keys(j), (std::vector<std::string>{"statistic", "p_value", "b", "c"}));
  EXPECT_EQ(j["b"].get<int>(), 9);
}

TEST(Report, SweepRowsMirrorResult) {
  const std::vector<double> p = {0.1, 0.6, 0.8, 0.95};
  const std::vector<int> y = {0, 0, 1, 1};
  const SweepResult sweep = ThresholdSweep(p, y);
  const Json j = ToJson(sweep);
  EXPECT_EQ(j["best_threshold"].get<double>(), sweep.best_threshold);
  ASSERT_EQ(j["rows"].size(), sweep.rows.size());
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    EXPECT_EQ(j["rows"][i]["threshold"].get<double>(), sweep.rows[i].threshold);
    EXPECT_EQ(j["rows"][i]["confusion"]["tp"].get<std::int64_t>(), sweep.rows[i].cm.tp);
    EXPECT_EQ(j["rows"][i]["f1"].get<double>(), sweep.rows[i].metrics.f1.value);
  }
}

TEST(Report, CaseExplanationShape) {
  CaseExplanation e;
  e.prediction = 1;
  e.correspondence = {0.8, {0.8, 0.2}};
  e.neighbors.push_back(Neighbor{0.5, 1, Provenance{"c1", "n7", 12}, {}, 3});
  Json j = ToJson(e);
  EXPECT_TRUE(j["probability"].is_null());
  EXPECT_EQ(j["neighbors"][0].dump(), R"({"distance":0.5,"label":1,"circuit":"c1","net":"n7","line":12})");
  e.probability = 0.75;
  e.manual_review = true;
  j = ToJson(e);
  EXPECT_EQ(j["probability"].get<double>(), 0.75);
  EXPECT_TRUE(j["manual_review"].get<bool>());
}

TEST(Report, AttributionUsesFeatureNames) {
  AttributionVector a;
  a.method = AttributionMethod::kShapley;
  a.values = {0.1, -0.5, 0.0, 0.3, -0.05};
  a.baseline = 0.2;
  const Json j = ToJson(a, FeatureRow{7, 1, 2, 3, 4});
  EXPECT_EQ(j["method"], "shapley");
  EXPECT_EQ(Keys(j["attributions"]), (std::vector<std::string>{"LGFi", "FFi", "FFo", "PI", "PO"}));
  EXPECT_EQ(j["feature_values"]["LGFi"].get<double>(), 7.0);
  EXPECT_EQ(j["ranking"], Json({"FFi", "PI", "LGFi", "PO", "FFo"}));
  EXPECT_FALSE(j.contains("ridge_fallback"));
  a.method = AttributionMethod::kLime;
  EXPECT_FALSE(ToJson(a, FeatureRow{})["ridge_fallback"].get<bool>());
}

TEST(Report, PropertyExplanationShape) {
  PropertyExplanation e;
  e.predicted_class = 1;
  e.per_class_confidence = {0.25, 0.75};
  e.patterns.push_back({7, 0.5, "LGFi and PO"});
  const Json j = ToJson(e);
  EXPECT_EQ(j["confidence"], Json({0.25, 0.75}));
  EXPECT_EQ(j["patterns"][0].dump(), R"({"property":7,"weight":0.5,"text":"LGFi and PO"})");
}

}  // namespace
}  // namespace htxai
