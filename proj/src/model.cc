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

#include "htxai/model.h"

#include <vector>

#include "htxai/error.h"

namespace htxai {

CoalitionValues NaiveCoalitionValues(const ProbabilityModel& model, const FeatureRow& x,
                                     std::span<const FeatureRow> background) {
  if (background.empty()) throw Error(ErrorCode::kInvalidArgument, "empty background");
  CoalitionValues values{};
  for (unsigned mask = 0; mask < kNumCoalitions; ++mask) {
    double sum = 0.0;
    for (const FeatureRow& b : background) sum += model.PredictProba(HybridRow(x, b, mask));
    values[mask] = sum / static_cast<double>(background.size());
  }
  return values;
}

namespace {

class NaiveEvaluator final : public CoalitionEvaluator {
 public:
  NaiveEvaluator(const ProbabilityModel& model, std::span<const FeatureRow> background)
      : model_(model), background_(background.begin(), background.end()) {}
  CoalitionValues Evaluate(const FeatureRow& x) const override {
    return NaiveCoalitionValues(model_, x, background_);
  }

 private:
  const ProbabilityModel& model_;
  std::vector<FeatureRow> background_;
};

}  // namespace

std::unique_ptr<CoalitionEvaluator> ProbabilityModel::PrepareCoalitions(
    std::span<const FeatureRow> background) const {
  if (background.empty()) throw Error(ErrorCode::kInvalidArgument, "empty background");
  return std::make_unique<NaiveEvaluator>(*this, background);
}

}  // namespace htxai
