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

#ifndef HTXAI_EVAL_STATS_H_
#define HTXAI_EVAL_STATS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace htxai {

struct ConfusionMatrix {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;

  // Throws kMismatchedLengths.
  static ConfusionMatrix FromPredictions(std::span<const int> predictions,
                                         std::span<const int> labels);
};

// A ratio whose denominator may be zero. Undefined values read as 0.
struct Ratio {
  double value = 0.0;
  bool defined = true;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class Metric { kPrecision, kRecall, kF1, kAccuracy, kFpr, kSpecificity };
std::string_view MetricName(Metric metric);

struct MetricsReport {
  Ratio precision, recall, f1, fpr, accuracy, specificity;
  std::optional<Interval> precision_ci, recall_ci, f1_ci, fpr_ci, accuracy_ci;

  const Ratio& Get(Metric metric) const;
};

// Requires cm.total() > 0.
MetricsReport ComputeMetrics(const ConfusionMatrix& cm);

// Precision * Accuracy * Recall * Specificity with `positive_class` taken as
// the positive class; undefined factors count as 0.
double EffectivenessPars(const ConfusionMatrix& cm, int positive_class);

struct SweepRow {
  double threshold = 0.0;
  ConfusionMatrix cm;
  MetricsReport metrics;
};

struct SweepResult {
  double best_threshold = 0.5;
  std::vector<SweepRow> rows;  // ascending threshold
};

// Evaluates every distinct score plus {0.5, 0.99} (and any extras); picks
// the maximum F1, ties to the lower threshold. Predictions use p >= t.
SweepResult ThresholdSweep(std::span<const double> probabilities, std::span<const int> labels,
                           std::span<const double> extra_thresholds = {});

struct BootstrapResult {
  Interval ci;
  std::size_t iterations_used = 0;
  std::size_t iterations_undefined = 0;
};

// Percentile bootstrap (2.5 / 97.5 by default). Iteration i draws from an
// engine seeded with seed + i.
BootstrapResult BootstrapCi(std::span<const int> predictions, std::span<const int> labels,
                            Metric metric, std::size_t n_iter, std::uint64_t seed,
                            double confidence = 0.95);

struct McNemarResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t b = 0;  // a correct, b wrong
  std::int64_t c = 0;  // a wrong, b correct
};
McNemarResult McNemar(std::span<const int> preds_a, std::span<const int> preds_b,
                      std::span<const int> labels, bool continuity_correction = true);

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
};
// Average ranks for ties; two-sided p from the t approximation with n-2
// degrees of freedom. Throws kConstantInput when either input is constant.
SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys);

// Ranks with ties averaged, 1-based.
std::vector<double> AverageRanks(std::span<const double> values);

// (mean_a - mean_b) / pooled standard deviation. Throws kZeroVariance.
double CohensD(std::span<const double> group_a, std::span<const double> group_b);

struct OddsRatioResult {
  double odds_ratio = 0.0;
  bool haldane_corrected = false;
};
// Odds of correct classification under a over the odds under b, with +0.5
// added to every cell when any cell is zero.
OddsRatioResult OddsRatioCorrect(const ConfusionMatrix& a, const ConfusionMatrix& b);

// before / after, e.g. an FPR reduction expressed as a fold change.
double FoldChange(double before, double after);

struct BonferroniResult {
  double threshold = 0.0;
  std::vector<bool> reject;
};
// Rejects when p < alpha / k.
BonferroniResult Bonferroni(std::span<const double> p_values, double alpha);

}  // namespace htxai

#endif  // HTXAI_EVAL_STATS_H_
