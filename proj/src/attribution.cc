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

#include "htxai/attribution.h"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>

#include "htxai/error.h"
#include "htxai/random.h"

namespace htxai {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ElapsedNs(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

constexpr double kRidge = 1e-6;

}  // namespace

std::string_view AttributionMethodName(AttributionMethod method) {
  switch (method) {
    case AttributionMethod::kLime: return "lime";
    case AttributionMethod::kShapley: return "shapley";
    case AttributionMethod::kGradient: return "gradient";
  }
  return "unknown";
}

void PerturbationConfig::Validate() const {
  if (n_samples < 10) throw Error(ErrorCode::kInvalidArgument, "n_samples must be >= 10");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  if (!(kernel_width > 0.0)) throw Error(ErrorCode::kInvalidArgument, "kernel_width must be > 0");
  if (background_size < 1) throw Error(ErrorCode::kInvalidArgument, "background_size must be >= 1");
}

TrainStats TrainStats::FromRows(std::span<const FeatureRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::kEmptyDataset, "training statistics need rows");
  TrainStats stats;
  const double n = static_cast<double>(rows.size());
  for (int f = 0; f < kNumFeatures; ++f) {
    auto& pool = stats.pools[f];
    pool.reserve(rows.size());
    double sum = 0.0;
    for (const auto& r : rows) {
      pool.push_back(r[f]);
      sum += r[f];
    }
    stats.mean[f] = sum / n;
    double var = 0.0;
    for (double v : pool) var += (v - stats.mean[f]) * (v - stats.mean[f]);
    const double sd = std::sqrt(var / n);
    stats.stddev[f] = sd > 0.0 ? sd : 1.0;
  }
  return stats;
}

AttributionVector LimeExplain(const ProbabilityModel& model, const FeatureRow& x,
                              const TrainStats& stats, const PerturbationConfig& config,
                              std::uint64_t stream) {
  config.Validate();
  const auto start = Clock::now();
  constexpr int kDim = kNumFeatures + 1;
  using Vec = Eigen::Matrix<double, kDim, 1>;
  using Mat = Eigen::Matrix<double, kDim, kDim>;

  Rng rng(config.seed ^ stream);
  FeatureRow x_std;
  for (int f = 0; f < kNumFeatures; ++f) x_std[f] = (x[f] - stats.mean[f]) / stats.stddev[f];
  const double inv_width2 = 1.0 / (config.kernel_width * config.kernel_width);

  Mat gram = Mat::Zero();
  Vec moment = Vec::Zero();
  FeatureRow z = x;
  for (int s = 0; s < config.n_samples; ++s) {
    if (s > 0) {
      for (int f = 0; f < kNumFeatures; ++f) z[f] = stats.pools[f][rng.below(stats.pools[f].size())];
    }
    Vec phi;
    phi[0] = 1.0;
    double d2 = 0.0;
    for (int f = 0; f < kNumFeatures; ++f) {
      phi[f + 1] = (z[f] - stats.mean[f]) / stats.stddev[f];
      const double diff = phi[f + 1] - x_std[f];
      d2 += diff * diff;
    }
    const double w = std::exp(-d2 * inv_width2);
    const double y = model.PredictProba(z);
    gram.noalias() += w * phi * phi.transpose();
    moment.noalias() += (w * y) * phi;
  }

  AttributionVector out;
  out.method = AttributionMethod::kLime;
  Eigen::ColPivHouseholderQR<Mat> qr(gram);
  qr.setThreshold(1e-10);
  Vec beta;
  if (qr.rank() == kDim) {
    beta = qr.solve(moment);
  } else {
    Mat ridged = gram;
    for (int k = 1; k < kDim; ++k) ridged(k, k) += kRidge;
    beta = ridged.colPivHouseholderQr().solve(moment);
    out.ridge_fallback = true;
  }
  out.baseline = beta[0];
  for (int f = 0; f < kNumFeatures; ++f) out.values[f] = beta[f + 1];
  out.wall_time_ns = ElapsedNs(start);
  return out;
}

std::array<double, kNumFeatures> ShapleyFromCoalitions(const CoalitionValues& values) {
  // |S|! (n - |S| - 1)! / n! for n = 5.
  std::array<double, kNumFeatures> weight{};
  const auto factorial = [](int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
  };
  for (int s = 0; s < kNumFeatures; ++s) {
    weight[s] = factorial(s) * factorial(kNumFeatures - s - 1) / factorial(kNumFeatures);
  }
  std::array<double, kNumFeatures> phi{};
  for (int i = 0; i < kNumFeatures; ++i) {
    const unsigned bit = 1u << i;
    for (unsigned mask = 0; mask < kNumCoalitions; ++mask) {
      if (mask & bit) continue;
      const int size = std::popcount(mask);
      phi[i] += weight[size] * (values[mask | bit] - values[mask]);
    }
  }
  return phi;
}

AttributionVector ShapleyExplain(const ProbabilityModel& model, const FeatureRow& x,
                                 std::span<const FeatureRow> background) {
  if (background.empty()) throw Error(ErrorCode::kInvalidArgument, "Shapley background is empty");
  const auto start = Clock::now();
  AttributionVector out = ShapleyExplainer(model, background).Explain(x);
  out.wall_time_ns = ElapsedNs(start);
  return out;
}

ShapleyExplainer::ShapleyExplainer(const ProbabilityModel& model, std::span<const FeatureRow> background) {
  if (background.empty()) throw Error(ErrorCode::kInvalidArgument, "Shapley background is empty");
  evaluator_ = model.PrepareCoalitions(background);
}

AttributionVector ShapleyExplainer::Explain(const FeatureRow& x) const {
  const auto start = Clock::now();
  const CoalitionValues values = evaluator_->Evaluate(x);
  AttributionVector out;
  out.method = AttributionMethod::kShapley;
  out.values = ShapleyFromCoalitions(values);
  out.baseline = values[0];
  out.wall_time_ns = ElapsedNs(start);
  return out;
}

AttributionVector GradientExplain(const ProbabilityModel& model, const FeatureRow& x,
                                  double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  const auto start = Clock::now();
  AttributionVector out;
  out.method = AttributionMethod::kGradient;
  out.baseline = model.PredictProba(x);
  for (int i = 0; i < kNumFeatures; ++i) {
    FeatureRow shifted = x;
    shifted[i] += epsilon;
    out.values[i] = (model.PredictProba(shifted) - out.baseline) / epsilon;
  }
  out.wall_time_ns = ElapsedNs(start);
  return out;
}

std::vector<FeatureRow> SampleBackground(std::span<const FeatureRow> rows, int size,
                                         std::uint64_t seed) {
  if (size < 1) throw Error(ErrorCode::kInvalidArgument, "background size must be >= 1");
  std::vector<std::size_t> idx(rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(std::min(idx.size(), static_cast<std::size_t>(size)));
  std::sort(idx.begin(), idx.end());
  std::vector<FeatureRow> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(rows[i]);
  return out;
}

std::array<int, kNumFeatures> RankFeatures(const std::array<double, kNumFeatures>& values) {
  std::array<int, kNumFeatures> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(values[a]) > std::abs(values[b]); });
  return order;
}

}  // namespace htxai
