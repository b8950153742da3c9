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

#ifndef HTXAI_BOOSTED_TREES_H_
#define HTXAI_BOOSTED_TREES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "htxai/features.h"
#include "htxai/model.h"

namespace htxai {

struct TrainConfig {
  int n_estimators = 100;
  int max_depth = 5;
  double learning_rate = 0.1;
  // Defaults to N_benign / N_trojan of the training data.
  std::optional<double> positive_class_weight;
  double l2_leaf_regularization = 1.0;
  double min_child_weight = 1.0;
  std::uint64_t seed = 42;
  // Features the trees may split on; all by default.
  std::array<bool, kNumFeatures> allowed_features = {true, true, true, true, true};

  // Throws kInvalidArgument.
  void Validate() const;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;  // taken when x[feature] < threshold
  int right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // root at index 0

  double Evaluate(const FeatureRow& x) const;
  int Depth() const;
  bool operator==(const RegressionTree&) const = default;
};

// Newton-boosted regression trees on the logit scale.
class BoostedTreeModel final : public ProbabilityModel {
 public:
  static constexpr std::string_view kSchema = "htxai.boosted_trees";
  static constexpr int kSchemaVersion = 1;

  BoostedTreeModel() = default;
  BoostedTreeModel(TrainConfig config, double base_score, std::vector<RegressionTree> trees);

  // sigmoid(base_score + learning_rate * sum of tree outputs); never exactly
  // 0 or 1.
  double PredictProba(const FeatureRow& x) const override;
  double Margin(const FeatureRow& x) const;

  // Exact v(S): each tree is walked once per group of background points
  // that branch identically, following every coalition at once.
  std::unique_ptr<CoalitionEvaluator> PrepareCoalitions(
      std::span<const FeatureRow> background) const override;

  const TrainConfig& config() const { return config_; }
  double base_score() const { return base_score_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }
  // Features referenced by at least one split.
  std::array<bool, kNumFeatures> UsedFeatures() const;

  std::string ToJson() const;
  // kCorruptModel on malformed input, kSchemaVersionMismatch on a schema or
  // version this build cannot read.
  static BoostedTreeModel FromJson(std::string_view text);
  void Save(const std::string& path) const;
  static BoostedTreeModel Load(const std::string& path);

  bool operator==(const BoostedTreeModel& other) const {
    return base_score_ == other.base_score_ && trees_ == other.trees_;
  }

 private:
  TrainConfig config_;
  double base_score_ = 0.0;
  std::vector<RegressionTree> trees_;
};

struct TrainDiagnostics {
  // Weighted mean log-loss before the first round and after each round.
  std::vector<double> loss_history;
  std::vector<std::string> warnings;
  double positive_class_weight = 1.0;
};

// Throws kSingleClassDataset unless both labels are present.
BoostedTreeModel TrainBoostedTrees(std::span<const FeatureRow> rows, std::span<const int> labels,
                                   const TrainConfig& config,
                                   TrainDiagnostics* diagnostics = nullptr);
BoostedTreeModel TrainBoostedTrees(const Dataset& dataset, const TrainConfig& config,
                                   TrainDiagnostics* diagnostics = nullptr);

// N_benign / N_trojan.
double ClassWeightRatio(std::span<const int> labels);

// 1 iff PredictProba(x) >= threshold; threshold in (0, 1).
int Classify(const ProbabilityModel& model, const FeatureRow& x, double threshold);

double Sigmoid(double margin);

}  // namespace htxai

#endif  // HTXAI_BOOSTED_TREES_H_
