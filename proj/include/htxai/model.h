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

#ifndef HTXAI_MODEL_H_
#define HTXAI_MODEL_H_

#include <array>
#include <functional>
#include <memory>
#include <span>

#include "htxai/features.h"

namespace htxai {

inline constexpr int kNumCoalitions = 1 << kNumFeatures;

// v(S) for every coalition S (bit i set = feature i taken from x), where
// v(S) is the mean model output over the background with the features
// outside S taken from each background point.
using CoalitionValues = std::array<double, kNumCoalitions>;

// Coalition values of one explained point at a time against a background
// fixed at construction.
class CoalitionEvaluator {
 public:
  virtual ~CoalitionEvaluator() = default;
  virtual CoalitionValues Evaluate(const FeatureRow& x) const = 0;
};

// Anything that maps a feature row to a trojan probability.
class ProbabilityModel {
 public:
  virtual ~ProbabilityModel() = default;
  virtual double PredictProba(const FeatureRow& x) const = 0;

  // The default evaluator runs every hybrid point through PredictProba.
  // Models with exploitable structure return a faster exact one. The model
  // must outlive the evaluator. Throws kInvalidArgument on an empty
  // background.
  virtual std::unique_ptr<CoalitionEvaluator> PrepareCoalitions(
      std::span<const FeatureRow> background) const;

  CoalitionValues EvaluateCoalitions(const FeatureRow& x,
                                     std::span<const FeatureRow> background) const {
    return PrepareCoalitions(background)->Evaluate(x);
  }
};

// Reference route: 2^5 * |background| calls to PredictProba.
CoalitionValues NaiveCoalitionValues(const ProbabilityModel& model, const FeatureRow& x,
                                     std::span<const FeatureRow> background);

// Wraps a callable, e.g. a closed-form test model.
class FunctionModel final : public ProbabilityModel {
 public:
  explicit FunctionModel(std::function<double(const FeatureRow&)> fn) : fn_(std::move(fn)) {}
  double PredictProba(const FeatureRow& x) const override { return fn_(x); }

 private:
  std::function<double(const FeatureRow&)> fn_;
};

// The hybrid point for coalition `mask`.
inline FeatureRow HybridRow(const FeatureRow& x, const FeatureRow& b, unsigned mask) {
  FeatureRow z;
  for (int i = 0; i < kNumFeatures; ++i) z[i] = (mask >> i) & 1u ? x[i] : b[i];
  return z;
}

}  // namespace htxai

#endif  // HTXAI_MODEL_H_
