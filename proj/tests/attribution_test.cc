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


#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "htxai/attribution.h"
#include "htxai/boosted_trees.h"
#include "htxai/error.h"
#include "test_util.h"

namespace htxai {
namespace {

double Sum(const std::array<double, kNumFeatures>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

std::vector<FeatureRow> RandomRows(int n, std::uint64_t seed, int range = 10) {
  Rng rng(seed);
  std::vector<FeatureRow> rows(n);
  for (auto& r : rows) {
    for (auto& v : r) v = static_cast<double>(rng.between(0, range));
  }
  return rows;
}

BoostedTreeModel TrainedModel() {
  TrainConfig cfg;
  cfg.n_estimators = 60;
  return TrainBoostedTrees(testing::ToyDataset(600, 60, 31), cfg);
}

TEST(Lime, ConstantModelGivesZeroCoefficients) {
  const FunctionModel model([](const FeatureRow&) { return 0.7; });
  const auto rows = RandomRows(300, 1);
  const auto stats = TrainStats::FromRows(rows);
  const auto a = LimeExplain(model, rows[0], stats, PerturbationConfig{});
  for (double v : a.values) EXPECT_NEAR(v, 0.0, 1e-6);
  EXPECT_NEAR(a.baseline, 0.7, 1e-6);
  EXPECT_FALSE(a.ridge_fallback);
  EXPECT_GT(a.wall_time_ns, 0);
}

TEST(Lime, SingleFeatureModelDominates) {
  const FunctionModel model([](const FeatureRow& x) { return Sigmoid(x[0] - 5.0); });
  const auto rows = RandomRows(500, 2);
  const auto stats = TrainStats::FromRows(rows);
  const auto a = LimeExplain(model, {5, 3, 3, 3, 3}, stats, PerturbationConfig{});
  EXPECT_GT(a.values[0], 0.05);
  for (int f = 1; f < kNumFeatures; ++f) EXPECT_LT(std::abs(a.values[f]), 0.1 * a.values[0]) << f;
  EXPECT_EQ(RankFeatures(a.values)[0], 0);
}

TEST(Lime, DeterministicPerSeedAndStream) {
  const auto model = TrainedModel();
  const auto rows = RandomRows(400, 3);
  const auto stats = TrainStats::FromRows(rows);
  PerturbationConfig cfg;
  const auto a = LimeExplain(model, rows[5], stats, cfg, 5);
  const auto b = LimeExplain(model, rows[5], stats, cfg, 5);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.baseline, b.baseline);
  const auto c = LimeExplain(model, rows[5], stats, cfg, 6);
  EXPECT_NE(a.values, c.values);
}

TEST(Lime, ConstantColumnUsesRidgeFallback) {
  auto rows = RandomRows(200, 4);
  for (auto& r : rows) r[3] = 2.0;
  const auto stats = TrainStats::FromRows(rows);
  EXPECT_EQ(stats.stddev[3], 1.0);
  const FunctionModel model([](const FeatureRow& x) { return 0.1 * x[0]; });
  const auto a = LimeExplain(model, rows[0], stats, PerturbationConfig{});
  EXPECT_TRUE(a.ridge_fallback);
  for (double v : a.values) EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(a.values[3], 0.0, 1e-9);
  EXPECT_NEAR(a.values[0], 0.1 * stats.stddev[0], 1e-6);
}

TEST(Lime, ConfigValidation) {
  PerturbationConfig cfg;
  cfg.n_samples = 9;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = {};
  cfg.epsilon = 0.0;
  EXPECT_THROW(cfg.Validate(), Error);
  EXPECT_NO_THROW(PerturbationConfig{}.Validate());
  EXPECT_NEAR(PerturbationConfig{}.kernel_width, 0.75 * std::sqrt(5.0), 1e-15);
}

TEST(Shapley, AdditiveModelClosedForm) {
  const FunctionModel model([](const FeatureRow& x) { return x[0] + x[1] + x[2] + x[3] + x[4]; });
  const auto bg = RandomRows(37, 5);
  const FeatureRow x = {4, 0, 9, 2, 7};
  const auto a = ShapleyExplain(model, x, bg);
  for (int f = 0; f < kNumFeatures; ++f) {
    double mean = 0.0;
    for (const auto& b : bg) mean += b[f];
    mean /= static_cast<double>(bg.size());
    EXPECT_NEAR(a.values[f], x[f] - mean, 1e-12);
  }
}

TEST(Shapley, SoleBackgroundEqualToInputGivesZeros) {
  const auto model = TrainedModel();
  const FeatureRow x = {6, 2, 1, 3, 0};
  const std::vector<FeatureRow> bg = {x};
  const auto a = ShapleyExplain(model, x, bg);
  for (double v : a.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(a.baseline, model.PredictProba(x));
}

TEST(Shapley, SymmetricFeaturesGetEqualValues) {
  const FunctionModel model([](const FeatureRow& x) { return x[1] * x[3] + 0.5 * x[0]; });
  const auto a = ShapleyExplain(model, {1, 3, 0, 3, 0}, std::vector<FeatureRow>{{0, 1, 0, 1, 0}});
  EXPECT_NEAR(a.values[1], a.values[3], 1e-12);
}

TEST(Shapley, DummyFeatureIsExactlyZero) {
  const FunctionModel model([](const FeatureRow& x) { return std::tanh(x[0] - x[4]); });
  const auto bg = RandomRows(20, 6);
  const auto a = ShapleyExplain(model, {3, 8, 1, 9, 2}, bg);
  EXPECT_EQ(a.values[1], 0.0);
  EXPECT_EQ(a.values[2], 0.0);
  EXPECT_EQ(a.values[3], 0.0);
  const auto model2 = TrainedModel();
  const auto used = model2.UsedFeatures();
  const auto b = ShapleyExplain(model2, {3, 8, 1, 9, 2}, bg);
  for (int f = 0; f < kNumFeatures; ++f) {
    if (!used[f]) EXPECT_EQ(b.values[f], 0.0);
  }
}

TEST(Shapley, LocalAccuracyOnTrainedModel) {
  const auto model = TrainedModel();
  const auto bg = SampleBackground(testing::ToyDataset(600, 60, 31).Rows(), 100, 42);
  const ShapleyExplainer explainer(model, bg);
  double worst = 0.0;
  for (const auto& x : RandomRows(1000, 7, 14)) {
    const auto a = explainer.Explain(x);
    worst = std::max(worst, std::abs(Sum(a.values) - (model.PredictProba(x) - a.baseline)));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Shapley, ExplainerAgreesWithNaiveEnumeration) {
  const auto model = TrainedModel();
  const auto bg = RandomRows(50, 8);
  const ShapleyExplainer explainer(model, bg);
  const FunctionModel wrapper([&](const FeatureRow& x) { return model.PredictProba(x); });
  for (const auto& x : RandomRows(50, 9)) {
    const auto fast = explainer.Explain(x);
    const auto slow = ShapleyExplain(wrapper, x, bg);
    for (int f = 0; f < kNumFeatures; ++f) ASSERT_NEAR(fast.values[f], slow.values[f], 1e-12);
    ASSERT_NEAR(fast.baseline, slow.baseline, 1e-12);
  }
}

TEST(Shapley, FromCoalitionsOnKnownGame) {
  // v(S) = 1 iff both feature 0 and 1 are present: each gets 1/2.
  CoalitionValues v{};
  for (unsigned s = 0; s < kNumCoalitions; ++s) v[s] = (s & 3u) == 3u ? 1.0 : 0.0;
  const auto phi = ShapleyFromCoalitions(v);
  EXPECT_NEAR(phi[0], 0.5, 1e-15);
  EXPECT_NEAR(phi[1], 0.5, 1e-15);
  EXPECT_EQ(phi[2], 0.0);
}

TEST(Shapley, EmptyBackgroundRejected) {
  const FunctionModel model([](const FeatureRow&) { return 0.5; });
  EXPECT_THROW(ShapleyExplain(model, {}, {}), Error);
  EXPECT_THROW(ShapleyExplainer(model, {}), Error);
}

TEST(Gradient, ConstantModelAllZero) {
  const FunctionModel model([](const FeatureRow&) { return 0.3; });
  const auto a = GradientExplain(model, {1, 2, 3, 4, 5}, 0.01);
  for (double v : a.values) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(a.baseline, 0.3);
}

TEST(Gradient, ZeroInsideLeafRegion) {
  // Integer inputs sit at least 0.5 from every midpoint threshold.
  const auto model = TrainedModel();
  for (const auto& x : RandomRows(100, 10)) {
    const auto a = GradientExplain(model, x, 0.01);
    for (double v : a.values) ASSERT_EQ(v, 0.0);
  }
}

TEST(Gradient, LinearSlopeRecovered) {
  const double s = 0.037;
  const FunctionModel model([&](const FeatureRow& x) { return 0.2 + s * x[2]; });
  const auto a = GradientExplain(model, {1, 1, 4, 1, 1}, 0.01);
  EXPECT_NEAR(a.values[2], s, 1e-9);
  EXPECT_NEAR(a.values[0], 0.0, 1e-12);
}

TEST(Gradient, EqualsTwoPointFormula) {
  const FunctionModel model([](const FeatureRow& x) { return Sigmoid(0.3 * x[0] - 0.2 * x[3] * x[3]); });
  const FeatureRow x = {2, 5, 1, 3, 8};
  const double eps = 0.01;
  const auto a = GradientExplain(model, x, eps);
  for (int i = 0; i < kNumFeatures; ++i) {
    FeatureRow y = x;
    y[i] += eps;
    EXPECT_EQ(a.values[i], (model.PredictProba(y) - model.PredictProba(x)) / eps);
  }
  EXPECT_THROW(GradientExplain(model, x, 0.0), Error);
}

TEST(RankFeatures, MagnitudeThenIndex) {
  EXPECT_EQ(RankFeatures({3, -5, 1, 0, 0}), (std::array<int, kNumFeatures>{1, 0, 2, 3, 4}));
  EXPECT_EQ(RankFeatures({0, 0, 0, 0, 0}), (std::array<int, kNumFeatures>{0, 1, 2, 3, 4}));
  EXPECT_EQ(RankFeatures({1, -1, 2, -2, 0}), (std::array<int, kNumFeatures>{2, 3, 0, 1, 4}));
}

TEST(SampleBackground, SubsetDeterministic) {
  const auto rows = RandomRows(500, 11);
  const auto a = SampleBackground(rows, 100, 42);
  EXPECT_EQ(a.size(), 100u);
  EXPECT_EQ(a, SampleBackground(rows, 100, 42));
  EXPECT_NE(a, SampleBackground(rows, 100, 43));
  EXPECT_EQ(SampleBackground(rows, 1000, 42).size(), 500u);
  EXPECT_THROW(SampleBackground(rows, 0, 42), Error);
}

TEST(TimingOrder, GradientFastestLimeSlowest) {
  const auto model = TrainedModel();
  const auto rows = testing::ToyDataset(600, 60, 31).Rows();
  const auto stats = TrainStats::FromRows(rows);
  const ShapleyExplainer shap(model, SampleBackground(rows, 100, 42));
  std::int64_t g = 0, s = 0, l = 0;
  for (int i = 0; i < 100; ++i) {
    g += GradientExplain(model, rows[i], 0.01).wall_time_ns;
    s += shap.Explain(rows[i]).wall_time_ns;
    l += LimeExplain(model, rows[i], stats, PerturbationConfig{}, i).wall_time_ns;
  }
  EXPECT_LT(g, s);
  EXPECT_LT(s, l);
}

}  // namespace
}  // namespace htxai
