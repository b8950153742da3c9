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

#include "htxai/case_explainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "htxai/error.h"

namespace htxai {

CaseIndex::CaseIndex(const Dataset& train, CaseIndexOptions options) : options_(options) {
  if (train.samples.empty()) throw Error(ErrorCode::kEmptyDataset, "case index needs training samples");
  scale_.fill(1.0);
  if (options_.standardize) {
    const double n = static_cast<double>(train.size());
    for (int f = 0; f < kNumFeatures; ++f) {
      double mean = 0.0;
      for (const auto& s : train.samples) mean += static_cast<double>(s.features[f]);
      mean /= n;
      double var = 0.0;
      for (const auto& s : train.samples) {
        const double d = static_cast<double>(s.features[f]) - mean;
        var += d * d;
      }
      const double sd = std::sqrt(var / n);
      scale_[f] = sd > 0.0 ? 1.0 / sd : 1.0;
    }
  }
  samples_ = train.samples;
  points_.reserve(samples_.size());
  for (const auto& s : samples_) {
    FeatureRow row = s.features.ToRow();
    for (int f = 0; f < kNumFeatures; ++f) row[f] *= scale_[f];
    points_.push_back(row);
  }
}

std::vector<Neighbor> CaseIndex::Knn(const FeatureRow& query, int k) const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  FeatureRow q = query;
  for (int f = 0; f < kNumFeatures; ++f) q[f] *= scale_[f];

  std::vector<std::pair<double, std::size_t>> dist(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    double d2 = 0.0;
    for (int f = 0; f < kNumFeatures; ++f) {
      const double diff = points_[i][f] - q[f];
      d2 += diff * diff;
    }
    dist[i] = {d2, i};
  }
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());

  std::vector<Neighbor> out;
  out.reserve(take);
  for (std::size_t j = 0; j < take; ++j) {
    const auto& s = samples_[dist[j].second];
    out.push_back({std::sqrt(dist[j].first), s.label, s.provenance, s.features, dist[j].second});
  }
  return out;
}

CorrespondenceScore Correspondence(const std::vector<Neighbor>& neighbors, int predicted_class) {
  if (neighbors.empty()) throw Error(ErrorCode::kInvalidArgument, "correspondence needs neighbours");
  if (predicted_class != 0 && predicted_class != 1) {
    throw Error(ErrorCode::kInvalidArgument, "predicted class must be 0 or 1");
  }
  CorrespondenceScore score;
  for (const auto& n : neighbors) {
    const double denom = n.distance + 1.0;
    score.class_weights[n.label] += 1.0 / (denom * denom);
  }
  score.value = score.class_weights[predicted_class] / (score.class_weights[0] + score.class_weights[1]);
  return score;
}

int NeighborMajority(const std::vector<Neighbor>& neighbors) {
  const auto trojans = std::count_if(neighbors.begin(), neighbors.end(),
                                     [](const Neighbor& n) { return n.label == 1; });
  const auto benign = static_cast<std::ptrdiff_t>(neighbors.size()) - trojans;
  if (trojans != benign) return trojans > benign ? 1 : 0;
  const auto w = Correspondence(neighbors, 0).class_weights;
  return w[1] > w[0] ? 1 : 0;
}

CaseExplanation ExplainCase(int prediction, std::optional<double> probability,
                            std::vector<Neighbor> neighbors, double review_threshold) {
  CaseExplanation e;
  e.prediction = prediction;
  e.probability = probability;
  e.correspondence = Correspondence(neighbors, prediction);
  e.manual_review = e.correspondence.value < review_threshold;
  e.neighbors = std::move(neighbors);
  return e;
}

}  // namespace htxai
