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

#include "htxai/eval_stats.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "htxai/error.h"
#include "htxai/random.h"

namespace htxai {

namespace {

void RequireSameLength(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    throw Error(ErrorCode::kMismatchedLengths,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Ratio Divide(std::int64_t num, std::int64_t den) {
  if (den == 0) return {0.0, false};
  return {static_cast<double>(num) / static_cast<double>(den), true};
}

}  // namespace

ConfusionMatrix ConfusionMatrix::FromPredictions(std::span<const int> predictions,
                                                 std::span<const int> labels) {
  RequireSameLength(predictions.size(), labels.size(), "predictions vs labels");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      (predictions[i] == 1 ? cm.tp : cm.fn)++;
    } else {
      (predictions[i] == 1 ? cm.fp : cm.tn)++;
    }
  }
  return cm;
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kPrecision: return "precision";
    case Metric::kRecall: return "recall";
    case Metric::kF1: return "f1";
    case Metric::kAccuracy: return "accuracy";
    case Metric::kFpr: return "fpr";
    case Metric::kSpecificity: return "specificity";
  }
  return "unknown";
}

const Ratio& MetricsReport::Get(Metric metric) const {
  switch (metric) {
    case Metric::kPrecision: return precision;
    case Metric::kRecall: return recall;
    case Metric::kF1: return f1;
    case Metric::kAccuracy: return accuracy;
    case Metric::kFpr: return fpr;
    case Metric::kSpecificity: return specificity;
  }
  return accuracy;
}

MetricsReport ComputeMetrics(const ConfusionMatrix& cm) {
  if (cm.tp < 0 || cm.fp < 0 || cm.tn < 0 || cm.fn < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative confusion-matrix cell");
  }
  if (cm.total() == 0) throw Error(ErrorCode::kInvalidArgument, "empty confusion matrix");
  MetricsReport r;
  r.precision = Divide(cm.tp, cm.tp + cm.fp);
  r.recall = Divide(cm.tp, cm.tp + cm.fn);
  r.fpr = Divide(cm.fp, cm.fp + cm.tn);
  r.specificity = Divide(cm.tn, cm.fp + cm.tn);
  r.accuracy = Divide(cm.tp + cm.tn, cm.total());
  if (r.precision.defined && r.recall.defined) {
    const double sum = r.precision.value + r.recall.value;
    r.f1 = {sum > 0.0 ? 2.0 * r.precision.value * r.recall.value / sum : 0.0, true};
  } else {
    r.f1 = {0.0, false};
  }
  return r;
}

double EffectivenessPars(const ConfusionMatrix& cm, int positive_class) {
  ConfusionMatrix oriented = cm;
  if (positive_class == 0) oriented = {cm.tn, cm.fn, cm.tp, cm.fp};
  if (oriented.total() == 0) return 0.0;
  const MetricsReport m = ComputeMetrics(oriented);
  return m.precision.value * m.accuracy.value * m.recall.value * m.specificity.value;
}

SweepResult ThresholdSweep(std::span<const double> probabilities, std::span<const int> labels,
                           std::span<const double> extra_thresholds) {
  RequireSameLength(probabilities.size(), labels.size(), "probabilities vs labels");
  const auto positives = std::count(labels.begin(), labels.end(), 1);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size())) {
    throw Error(ErrorCode::kSingleClassDataset, "threshold sweep needs both classes");
  }
  std::vector<double> thresholds(probabilities.begin(), probabilities.end());
  thresholds.push_back(0.5);
  thresholds.push_back(0.99);
  thresholds.insert(thresholds.end(), extra_thresholds.begin(), extra_thresholds.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  std::vector<std::size_t> order(probabilities.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return probabilities[a] < probabilities[b]; });

  const std::int64_t n_pos = positives;
  const std::int64_t n_neg = static_cast<std::int64_t>(labels.size()) - n_pos;
  std::int64_t below_pos = 0, below_neg = 0;
  std::size_t cursor = 0;
  SweepResult result;
  double best_f1 = -1.0;
  for (double t : thresholds) {
    while (cursor < order.size() && probabilities[order[cursor]] < t) {
      (labels[order[cursor]] == 1 ? below_pos : below_neg)++;
      ++cursor;
    }
    SweepRow row;
    row.threshold = t;
    row.cm = {n_pos - below_pos, n_neg - below_neg, below_neg, below_pos};
    row.metrics = ComputeMetrics(row.cm);
    if (row.metrics.f1.value > best_f1) {
      best_f1 = row.metrics.f1.value;
      result.best_threshold = t;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

namespace {

double Percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

BootstrapResult BootstrapCi(std::span<const int> predictions, std::span<const int> labels,
                            Metric metric, std::size_t n_iter, std::uint64_t seed,
                            double confidence) {
  RequireSameLength(predictions.size(), labels.size(), "predictions vs labels");
  if (n_iter < 100) throw Error(ErrorCode::kInvalidArgument, "bootstrap needs >= 100 iterations");
  if (labels.empty()) throw Error(ErrorCode::kInvalidArgument, "bootstrap on empty data");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "confidence must lie in (0, 1)");
  }
  const std::size_t n = labels.size();
  std::vector<double> values;
  values.reserve(n_iter);
  BootstrapResult result;
  for (std::size_t it = 0; it < n_iter; ++it) {
    Rng rng(seed + it);
    ConfusionMatrix cm;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = rng.below(n);
      if (labels[i] == 1) {
        (predictions[i] == 1 ? cm.tp : cm.fn)++;
      } else {
        (predictions[i] == 1 ? cm.fp : cm.tn)++;
      }
    }
    const Ratio r = ComputeMetrics(cm).Get(metric);
    if (!r.defined) {
      ++result.iterations_undefined;
      continue;
    }
    values.push_back(r.value);
  }
  result.iterations_used = values.size();
  if (values.empty()) return result;
  std::sort(values.begin(), values.end());
  const double tail = (1.0 - confidence) / 2.0;
  result.ci = {Percentile(values, tail), Percentile(values, 1.0 - tail)};
  return result;
}

McNemarResult McNemar(std::span<const int> preds_a, std::span<const int> preds_b,
                      std::span<const int> labels, bool continuity_correction) {
  RequireSameLength(preds_a.size(), labels.size(), "preds_a vs labels");
  RequireSameLength(preds_b.size(), labels.size(), "preds_b vs labels");
  McNemarResult r;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool a_ok = preds_a[i] == labels[i];
    const bool b_ok = preds_b[i] == labels[i];
    if (a_ok && !b_ok) ++r.b;
    if (!a_ok && b_ok) ++r.c;
  }
  const std::int64_t discordant = r.b + r.c;
  if (discordant == 0) return r;
  double diff = std::abs(static_cast<double>(r.b - r.c));
  if (continuity_correction) diff = std::max(0.0, diff - 1.0);
  r.statistic = diff * diff / static_cast<double>(discordant);
  r.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(1.0), r.statistic));
  return r;
}

std::vector<double> AverageRanks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

SpearmanResult Spearman(std::span<const double> xs, std::span<const double> ys) {
  RequireSameLength(xs.size(), ys.size(), "xs vs ys");
  const std::size_t n = xs.size();
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "spearman needs at least 3 pairs");
  const auto rx = AverageRanks(xs);
  const auto ry = AverageRanks(ys);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::kConstantInput, "rank correlation of a constant input");
  SpearmanResult r;
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (std::abs(r.rho) >= 1.0 - 1e-15) {
    r.p_value = 0.0;
    return r;
  }
  const double df = static_cast<double>(n) - 2.0;
  const double t = r.rho * std::sqrt(df / (1.0 - r.rho * r.rho));
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(boost::math::students_t(df), std::abs(t)));
  return r;
}

double CohensD(std::span<const double> group_a, std::span<const double> group_b) {
  const std::size_t na = group_a.size(), nb = group_b.size();
  if (na == 0 || nb == 0 || na + nb < 3) {
    throw Error(ErrorCode::kInvalidArgument, "Cohen's d needs non-empty groups with n_a + n_b > 2");
  }
  auto mean = [](std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  auto sum_sq = [](std::span<const double> v, double m) {
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s;
  };
  const double ma = mean(group_a), mb = mean(group_b);
  const double pooled_var = (sum_sq(group_a, ma) + sum_sq(group_b, mb)) / static_cast<double>(na + nb - 2);
  if (pooled_var <= 0.0) throw Error(ErrorCode::kZeroVariance, "pooled standard deviation is zero");
  return (ma - mb) / std::sqrt(pooled_var);
}

OddsRatioResult OddsRatioCorrect(const ConfusionMatrix& a, const ConfusionMatrix& b) {
  double ca = static_cast<double>(a.tp + a.tn), ia = static_cast<double>(a.fp + a.fn);
  double cb = static_cast<double>(b.tp + b.tn), ib = static_cast<double>(b.fp + b.fn);
  OddsRatioResult r;
  if (ca == 0 || ia == 0 || cb == 0 || ib == 0) {
    ca += 0.5;
    ia += 0.5;
    cb += 0.5;
    ib += 0.5;
    r.haldane_corrected = true;
  }
  r.odds_ratio = (ca / ia) / (cb / ib);
  return r;
}

double FoldChange(double before, double after) {
  if (after == 0.0) throw Error(ErrorCode::kInvalidArgument, "fold change with zero denominator");
  return before / after;
}

BonferroniResult Bonferroni(std::span<const double> p_values, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  if (p_values.empty()) throw Error(ErrorCode::kInvalidArgument, "no p-values");
  BonferroniResult r;
  r.threshold = alpha / static_cast<double>(p_values.size());
  for (double p : p_values) r.reject.push_back(p < r.threshold);
  return r;
}

}  // namespace htxai
