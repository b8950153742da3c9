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

#ifndef HTXAI_PROPERTY_ENSEMBLE_H_
#define HTXAI_PROPERTY_ENSEMBLE_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "htxai/boosted_trees.h"
#include "htxai/features.h"

namespace htxai {

inline constexpr int kNumProperties = (1 << kNumFeatures) - 1;

struct PropertyDescriptor {
  int id = 0;  // 1..31
  std::array<bool, kNumFeatures> subset{};
  std::string description;

  int size() const;
  // Description with the sample's values spliced in, e.g.
  // "high fanin complexity (LGFi=12) combined with proximity to primary
  // output (PO=1)".
  std::string Render(const FeatureVector& x) const;
};

// All nonempty feature subsets ordered by size, then lexicographically by
// feature index.
std::vector<PropertyDescriptor> EnumerateProperties();

struct EnsembleMember {
  PropertyDescriptor descriptor;
  BoostedTreeModel model;
  std::array<double, 2> effectiveness{};  // E_PARS for class 0 and class 1
};

struct EnsembleOptions {
  double validation_fraction = 0.2;
  std::uint64_t seed = 42;
  // Threshold turning a member's probability into its binary vote.
  double vote_threshold = 0.5;
  // Class chosen when both confidences are equal.
  int tie_class = 0;
};

struct MemberVote {
  int property_id = 0;
  int vote = 0;
  double weight = 0.0;
};

struct VoteResult {
  int predicted_class = 0;
  std::array<double, 2> per_class_confidence{};
  std::vector<MemberVote> votes;
};

struct PatternLine {
  int property_id = 0;
  double weight = 0.0;
  std::string text;
};

struct PropertyExplanation {
  int predicted_class = 0;
  std::array<double, 2> per_class_confidence{};
  // Members that voted for the predicted class, heaviest first.
  std::vector<PatternLine> patterns;
};

class PropertyEnsemble {
 public:
  static constexpr std::string_view kSchema = "htxai.property_ensemble";
  static constexpr int kSchemaVersion = 1;

  PropertyEnsemble() = default;
  PropertyEnsemble(std::vector<EnsembleMember> members, EnsembleOptions options);

  const std::vector<EnsembleMember>& members() const { return members_; }
  const EnsembleOptions& options() const { return options_; }

  VoteResult PredictWeightedVote(const FeatureRow& x) const;

  std::string ToJson() const;
  static PropertyEnsemble FromJson(std::string_view text);

 private:
  std::vector<EnsembleMember> members_;
  EnsembleOptions options_;
};

// Trains one boosted model per property on its feature subset, then weighs
// each member by its one-vs-rest E_PARS on a stratified validation slice.
PropertyEnsemble TrainEnsemble(const Dataset& train, const TrainConfig& config,
                               const EnsembleOptions& options = {});

// Aggregates arbitrary member votes; exposed for testing the voting rule.
VoteResult AggregateVotes(std::vector<MemberVote> votes, int tie_class = 0);

PropertyExplanation ExplainProperty(const VoteResult& vote,
                                    const std::vector<PropertyDescriptor>& descriptors,
                                    const FeatureVector& x);

}  // namespace htxai

#endif  // HTXAI_PROPERTY_ENSEMBLE_H_
