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

#ifndef HTXAI_CASE_EXPLAINER_H_
#define HTXAI_CASE_EXPLAINER_H_

#include <array>
#include <optional>
#include <vector>

#include "htxai/features.h"
#include "htxai/model.h"

namespace htxai {

struct CaseIndexOptions {
  // Scale each feature by its training standard deviation before measuring
  // distance. Off by default: raw Euclidean distance.
  bool standardize = false;
};

struct Neighbor {
  double distance = 0.0;
  int label = 0;
  Provenance provenance;
  FeatureVector features;
  std::size_t index = 0;  // insertion position in the index
};

// Exact nearest-neighbour index over training samples (linear scan).
class CaseIndex {
 public:
  // Throws kEmptyDataset.
  explicit CaseIndex(const Dataset& train, CaseIndexOptions options = {});

  std::size_t size() const { return points_.size(); }
  const CaseIndexOptions& options() const { return options_; }

  // The min(k, size) nearest points by ascending distance, ties in insertion
  // order. k >= 1.
  std::vector<Neighbor> Knn(const FeatureRow& query, int k) const;

 private:
  CaseIndexOptions options_;
  std::array<double, kNumFeatures> scale_{};
  std::vector<FeatureRow> points_;  // scaled
  std::vector<LabeledSample> samples_;
};

struct CorrespondenceScore {
  double value = 0.0;                   // C(predicted class)
  std::array<double, 2> class_weights{};  // w(c) = sum of 1 / (d + 1)^2
};

// Requires a nonempty neighbour set.
CorrespondenceScore Correspondence(const std::vector<Neighbor>& neighbors, int predicted_class);

// Majority label among the neighbours; count ties go to the larger
// distance weight, then to class 0.
int NeighborMajority(const std::vector<Neighbor>& neighbors);

inline constexpr double kDefaultReviewThreshold = 0.70;

struct CaseExplanation {
  int prediction = 0;
  std::optional<double> probability;  // absent in pure k-NN mode
  CorrespondenceScore correspondence;
  bool manual_review = false;
  std::vector<Neighbor> neighbors;
};

CaseExplanation ExplainCase(int prediction, std::optional<double> probability,
                            std::vector<Neighbor> neighbors,
                            double review_threshold = kDefaultReviewThreshold);

}  // namespace htxai

#endif  // HTXAI_CASE_EXPLAINER_H_
