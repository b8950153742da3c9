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

#ifndef HTXAI_ATTRIBUTION_H_
#define HTXAI_ATTRIBUTION_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "htxai/features.h"
#include "htxai/model.h"

namespace htxai {

enum class AttributionMethod { kLime, kShapley, kGradient };
std::string_view AttributionMethodName(AttributionMethod method);

struct AttributionVector {
  AttributionMethod method = AttributionMethod::kGradient;
  // Positive values push toward the trojan class.
  std::array<double, kNumFeatures> values{};
  // lime: surrogate intercept; shapley: v(empty set); gradient: f(x).
  double baseline = 0.0;
  // lime only: the regression needed the ridge fallback.
  bool ridge_fallback = false;
  std::int64_t wall_time_ns = 0;
};

struct PerturbationConfig {
  int n_samples = 1000;
  double kernel_width = 0.75 * std::sqrt(5.0);
  std::uint64_t seed = 42;
  double epsilon = 0.01;
  int background_size = 100;

  void Validate() const;
};

// Empirical per-feature value pools plus moments of the training data.
struct TrainStats {
  std::array<std::vector<double>, kNumFeatures> pools;
  std::array<double, kNumFeatures> mean{};
  std::array<double, kNumFeatures> stddev{};  // population; 1 when constant

  static TrainStats FromRows(std::span<const FeatureRow> rows);
};

// Local weighted linear surrogate. Sample 0 is x itself; the rest draw each
// feature independently from its pool. Weights exp(-d^2 / width^2) with d
// measured in standardized space; coefficients are per standardized unit.
// `stream` is mixed into the seed so each explained sample has its own
// reproducible draws.
AttributionVector LimeExplain(const ProbabilityModel& model, const FeatureRow& x,
                              const TrainStats& stats, const PerturbationConfig& config,
                              std::uint64_t stream = 0);

// Exact Shapley values by enumerating all 2^5 coalitions of an
// interventional value function over `background`.
AttributionVector ShapleyExplain(const ProbabilityModel& model, const FeatureRow& x,
                                 std::span<const FeatureRow> background);

// Same values with the background prepared once for many explained points.
// wall_time_ns covers Explain only. The model must outlive the explainer.
class ShapleyExplainer {
 public:
  ShapleyExplainer(const ProbabilityModel& model, std::span<const FeatureRow> background);
  AttributionVector Explain(const FeatureRow& x) const;

 private:
  std::unique_ptr<CoalitionEvaluator> evaluator_;
};

// Shapley weights applied to precomputed coalition values.
std::array<double, kNumFeatures> ShapleyFromCoalitions(const CoalitionValues& values);

// Forward differences (f(x + eps e_i) - f(x)) / eps.
AttributionVector GradientExplain(const ProbabilityModel& model, const FeatureRow& x,
                                  double epsilon);

// Seeded subsample without replacement (all rows when size >= rows).
std::vector<FeatureRow> SampleBackground(std::span<const FeatureRow> rows, int size,
                                         std::uint64_t seed);

// Feature indices by descending |value|, ties by index.
std::array<int, kNumFeatures> RankFeatures(const std::array<double, kNumFeatures>& values);

}  // namespace htxai

#endif  // HTXAI_ATTRIBUTION_H_
