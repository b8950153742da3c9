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

#ifndef HTXAI_REPORT_H_
#define HTXAI_REPORT_H_

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>

#include "htxai/attribution.h"
#include "htxai/case_explainer.h"
#include "htxai/eval_stats.h"
#include "htxai/features.h"
#include "htxai/property_ensemble.h"

namespace htxai {

using Json = nlohmann::ordered_json;

Json ToJson(const ConfusionMatrix& cm);
// {"value": v, "defined": b} plus "ci": [lo, hi] when present.
Json ToJson(const MetricsReport& report);
Json ToJson(const SweepResult& sweep);
Json ToJson(const McNemarResult& result);

// {prediction, probability, correspondence, manual_review,
//  neighbors: [{distance, label, circuit, net, line}]}
Json ToJson(const CaseExplanation& explanation);

// {method, feature_values, attributions, baseline, ranking, wall_time_ns};
// ridge_fallback only for lime. Keys of the two maps are feature names.
Json ToJson(const AttributionVector& attribution, const FeatureRow& x);

// {prediction, confidence: [c0, c1], patterns: [{property, weight, text}]}
Json ToJson(const PropertyExplanation& explanation);

Json ToJson(const Provenance& provenance);

}  // namespace htxai

#endif  // HTXAI_REPORT_H_
