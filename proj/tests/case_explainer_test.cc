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
#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "htxai/case_explainer.h"
#include "htxai/error.h"
#include "test_util.h"

namespace htxai {
namespace {

Neighbor At(double distance, int label) {
  Neighbor n;
  n.distance = distance;
  n.label = label;
  return n;
}

Dataset RandomPoints(int n, std::uint64_t seed, int range = 12) {
  Rng rng(seed);
  Dataset ds;
  for (int i = 0; i < n; ++i) {
    LabeledSample s;
    s.features = {rng.between(0, range), rng.between(0, range), rng.between(0, range),
                  rng.between(0, range), rng.between(0, range)};
    s.label = rng.chance(0.1);
    s.provenance = {"c" + std::to_string(i % 7), "n" + std::to_string(i), i + 1};
    ds.samples.push_back(s);
  }
  return ds;
}

// Stable sort of exact squared distances: the reference scan.
std::vector<std::size_t> BruteForce(const Dataset& ds, const FeatureRow& q, int k) {
  std::vector<std::pair<double, std::size_t>> d;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const FeatureRow r = ds.samples[i].features.ToRow();
    double s = 0.0;
    for (int f = 0; f < kNumFeatures; ++f) s += (r[f] - q[f]) * (r[f] - q[f]);
    d.push_back({s, i});
  }
  std::stable_sort(d.begin(), d.end(), [](auto a, auto b) { return a.first < b.first; });
  std::vector<std::size_t> out;
  for (int j = 0; j < k && j < static_cast<int>(d.size()); ++j) out.push_back(d[j].second);
  return out;
}

TEST(CaseIndex, SinglePointAndSize) {
  const Dataset one = RandomPoints(1, 3);
  const CaseIndex idx(one);
  EXPECT_EQ(idx.size(), 1u);
  const auto nn = idx.Knn({100, 100, 100, 100, 100}, 5);
  ASSERT_EQ(nn.size(), 1u);
  EXPECT_EQ(nn[0].provenance, one.samples[0].provenance);
  EXPECT_EQ(CaseIndex(RandomPoints(77, 4)).size(), 77u);
}

TEST(CaseIndex, EmptyDatasetRejected) {
  try {
    CaseIndex idx{Dataset{}};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
}

TEST(Knn, ExactMatchAndOversizedK) {
  const Dataset ds = RandomPoints(10, 5);
  const CaseIndex idx(ds);
  const auto nn = idx.Knn(ds.samples[6].features.ToRow(), 3);
  EXPECT_EQ(nn[0].distance, 0.0);
  EXPECT_EQ(nn[0].provenance.net, ds.samples[6].provenance.net);
  EXPECT_EQ(idx.Knn({0, 0, 0, 0, 0}, 50).size(), 10u);
  EXPECT_THROW(idx.Knn({0, 0, 0, 0, 0}, 0), Error);
}

TEST(Knn, CraftedTenPointSet) {
  // Points on the LGFi axis at 0..9; query at 4.4 gives distances
  // 0.4, 0.6, 1.4, 1.6, 2.4 for points 4, 5, 3, 6, 2.
  Dataset ds;
  for (int i = 0; i < 10; ++i) {
    LabeledSample s;
    s.features.lgfi = i;
    s.provenance.net = "p" + std::to_string(i);
    ds.samples.push_back(s);
  }
  const auto nn = CaseIndex(ds).Knn({4.4, 0, 0, 0, 0}, 5);
  const std::vector<std::string> want = {"p4", "p5", "p3", "p6", "p2"};
  const std::vector<double> dist = {0.4, 0.6, 1.4, 1.6, 2.4};
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(nn[j].provenance.net, want[j]);
    EXPECT_NEAR(nn[j].distance, dist[j], 1e-12);
  }
}

TEST(Knn, TiesKeepInsertionOrder) {
  Dataset ds = RandomPoints(6, 9);
  for (auto& s : ds.samples) s.features = {1, 1, 1, 1, 1};
  const auto nn = CaseIndex(ds).Knn({0, 0, 0, 0, 0}, 6);
  for (std::size_t j = 0; j < nn.size(); ++j) EXPECT_EQ(nn[j].index, j);
}

TEST(Knn, MatchesLinearScan) {
  const Dataset ds = RandomPoints(3000, 6);
  const CaseIndex idx(ds);
  Rng rng(7);
  for (int q = 0; q < 300; ++q) {
    FeatureRow query;
    for (auto& v : query) v = static_cast<double>(rng.between(-2, 14));
    const int k = static_cast<int>(rng.between(1, 9));
    const auto got = idx.Knn(query, k);
    const auto want = BruteForce(ds, query, k);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t j = 0; j < got.size(); ++j) ASSERT_EQ(got[j].index, want[j]) << q;
    for (std::size_t j = 1; j < got.size(); ++j) ASSERT_LE(got[j - 1].distance, got[j].distance);
  }
}

TEST(Knn, StandardizedDistances) {
  Dataset ds;
  for (int i = 0; i < 4; ++i) {
    LabeledSample s;
    s.features = {i * 100, i % 2, 0, 0, 0};
    ds.samples.push_back(s);
  }
  // Raw distance is dominated by LGFi. After scaling by the population SDs
  // (sqrt(12500) and 0.5) the second point wins.
  const auto raw = CaseIndex(ds).Knn({0, 1, 0, 0, 0}, 1);
  EXPECT_EQ(raw[0].index, 0u);
  const auto scaled = CaseIndex(ds, {true}).Knn({0, 1, 0, 0, 0}, 4);
  EXPECT_EQ(scaled[0].index, 1u);
  EXPECT_NEAR(scaled[0].distance, 100.0 / std::sqrt(12500.0), 1e-12);
  EXPECT_NEAR(scaled[1].distance, 2.0, 1e-12);
}

TEST(Correspondence, Unanimous) {
  const auto s = Correspondence({At(0, 1), At(1.5, 1), At(3, 1)}, 1);
  EXPECT_EQ(s.value, 1.0);
  EXPECT_EQ(s.class_weights[0], 0.0);
}

TEST(Correspondence, SymmetricPair) {
  EXPECT_EQ(Correspondence({At(2, 0), At(2, 1)}, 1).value, 0.5);
}

TEST(Correspondence, WorkedExampleFollowsFormula) {
  const std::vector<Neighbor> nn = {At(0, 1), At(1, 1), At(1, 1), At(2, 1), At(2, 0)};
  const auto s = Correspondence(nn, 1);
  EXPECT_NEAR(s.class_weights[1], 1.0 + 0.25 + 0.25 + 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(s.class_weights[0], 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(s.value, 0.9355, 1e-4);
  // The published narrative quotes 94.2% for this set; the equations give
  // 58/62 = 0.93548..., which is what the code reports.
  EXPECT_NEAR(s.value, 58.0 / 62.0, 1e-15);
  EXPECT_GT(std::abs(s.value - 0.942), 0.005);
}

TEST(Correspondence, NormalizationPermutationAndMonotonicity) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Neighbor> nn;
    const int k = static_cast<int>(rng.between(1, 9));
    for (int j = 0; j < k; ++j) nn.push_back(At(rng.unit() * 10, static_cast<int>(rng.below(2))));
    const auto c0 = Correspondence(nn, 0), c1 = Correspondence(nn, 1);
    EXPECT_NEAR(c0.value + c1.value, 1.0, 1e-12);
    std::vector<Neighbor> perm = nn;
    rng.shuffle(std::span<Neighbor>(perm));
    EXPECT_NEAR(Correspondence(perm, 1).value, c1.value, 1e-12);

    const int pred = nn[0].label;
    const double before = Correspondence(nn, pred).value;
    if (before < 1.0 && nn[0].distance > 0.1) {
      nn[0].distance -= 0.1;
      EXPECT_GT(Correspondence(nn, pred).value, before);
    }
  }
}

TEST(ExplainCase, ReviewFlagAndOrdering) {
  const Dataset ds = RandomPoints(200, 8);
  const CaseIndex idx(ds);
  auto nn = idx.Knn(ds.samples[10].features.ToRow(), 5);
  EXPECT_EQ(nn[0].distance, 0.0);
  const auto e = ExplainCase(1, 0.97, nn);
  EXPECT_EQ(e.neighbors.front().distance, 0.0);
  EXPECT_EQ(e.manual_review, e.correspondence.value < 0.70);

  const auto low = ExplainCase(1, std::nullopt, {At(0, 0), At(0.5, 1), At(3, 1)});
  EXPECT_LT(low.correspondence.value, 0.70);
  EXPECT_TRUE(low.manual_review);
  const auto high = ExplainCase(0, std::nullopt, {At(0, 0), At(1, 1), At(3, 1)});
  EXPECT_NEAR(high.correspondence.value, 1.0 / 1.3125, 1e-15);
  EXPECT_FALSE(high.manual_review);
  EXPECT_FALSE(ExplainCase(1, 0.5, {At(0, 0), At(0, 1)}, 0.5).manual_review);
}

TEST(NeighborMajority, CountThenWeight) {
  EXPECT_EQ(NeighborMajority({At(0, 1), At(1, 1), At(0, 0)}), 1);
  EXPECT_EQ(NeighborMajority({At(0, 0), At(1, 1)}), 0);
  EXPECT_EQ(NeighborMajority({At(1, 0), At(0, 1)}), 1);
}

}  // namespace
}  // namespace htxai
