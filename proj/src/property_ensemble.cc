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

#include "htxai/property_ensemble.h"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "htxai/error.h"
#include "htxai/eval_stats.h"

namespace htxai {

namespace {

constexpr std::array<std::string_view, kNumFeatures> kPhrases = {
    "high fanin complexity",       // LGFi
    "proximity to upstream flip-flops",  // FFi
    "flip-flop reach downstream",  // FFo
    "distance from primary inputs",  // PI
    "proximity to primary output",   // PO
};

std::string JoinPhrases(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += i + 1 == parts.size() ? " combined with " : ", ";
    out += parts[i];
  }
  return out;
}

}  // namespace

int PropertyDescriptor::size() const {
  return static_cast<int>(std::count(subset.begin(), subset.end(), true));
}

std::string PropertyDescriptor::Render(const FeatureVector& x) const {
  std::vector<std::string> parts;
  for (int f = 0; f < kNumFeatures; ++f) {
    if (!subset[f]) continue;
    parts.push_back(std::string(kPhrases[f]) + " (" + std::string(kFeatureNames[f]) + "=" +
                    std::to_string(x[f]) + ")");
  }
  return JoinPhrases(parts);
}

std::vector<PropertyDescriptor> EnumerateProperties() {
  std::vector<std::array<bool, kNumFeatures>> subsets;
  for (unsigned mask = 1; mask < (1u << kNumFeatures); ++mask) {
    std::array<bool, kNumFeatures> s{};
    for (int f = 0; f < kNumFeatures; ++f) s[f] = (mask >> f) & 1u;
    subsets.push_back(s);
  }
  auto indices = [](const std::array<bool, kNumFeatures>& s) {
    std::vector<int> idx;
    for (int f = 0; f < kNumFeatures; ++f) {
      if (s[f]) idx.push_back(f);
    }
    return idx;
  };
  std::sort(subsets.begin(), subsets.end(), [&](const auto& a, const auto& b) {
    const auto ia = indices(a), ib = indices(b);
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    return ia < ib;
  });
  std::vector<PropertyDescriptor> out;
  for (const auto& s : subsets) {
    PropertyDescriptor d;
    d.id = static_cast<int>(out.size()) + 1;
    d.subset = s;
    std::vector<std::string> parts;
    for (int f : indices(s)) parts.emplace_back(kPhrases[f]);
    d.description = JoinPhrases(parts);
    out.push_back(std::move(d));
  }
  return out;
}

PropertyEnsemble::PropertyEnsemble(std::vector<EnsembleMember> members, EnsembleOptions options)
    : members_(std::move(members)), options_(options) {}

VoteResult AggregateVotes(std::vector<MemberVote> votes, int tie_class) {
  VoteResult r;
  for (const auto& v : votes) r.per_class_confidence[v.vote] += v.weight;
  const double c0 = r.per_class_confidence[0], c1 = r.per_class_confidence[1];
  r.predicted_class = c1 > c0 ? 1 : (c0 > c1 ? 0 : tie_class);
  r.votes = std::move(votes);
  return r;
}

VoteResult PropertyEnsemble::PredictWeightedVote(const FeatureRow& x) const {
  std::vector<MemberVote> votes;
  votes.reserve(members_.size());
  for (const auto& m : members_) {
    const int vote = Classify(m.model, x, options_.vote_threshold);
    votes.push_back({m.descriptor.id, vote, m.effectiveness[vote]});
  }
  return AggregateVotes(std::move(votes), options_.tie_class);
}

PropertyExplanation ExplainProperty(const VoteResult& vote,
                                    const std::vector<PropertyDescriptor>& descriptors,
                                    const FeatureVector& x) {
  PropertyExplanation e;
  e.predicted_class = vote.predicted_class;
  e.per_class_confidence = vote.per_class_confidence;
  std::vector<const MemberVote*> winners;
  for (const auto& v : vote.votes) {
    if (v.vote == vote.predicted_class) winners.push_back(&v);
  }
  std::stable_sort(winners.begin(), winners.end(),
                   [](const MemberVote* a, const MemberVote* b) { return a->weight > b->weight; });
  for (const MemberVote* v : winners) {
    auto it = std::find_if(descriptors.begin(), descriptors.end(),
                           [&](const PropertyDescriptor& d) { return d.id == v->property_id; });
    if (it == descriptors.end()) {
      throw Error(ErrorCode::kInvalidArgument, "unknown property id " + std::to_string(v->property_id));
    }
    e.patterns.push_back({v->property_id, v->weight, it->Render(x)});
  }
  return e;
}

PropertyEnsemble TrainEnsemble(const Dataset& train, const TrainConfig& config,
                               const EnsembleOptions& options) {
  const ClassCounts counts = train.class_counts();
  if (counts.n_benign == 0 || counts.n_trojan == 0) {
    throw Error(ErrorCode::kSingleClassDataset, "ensemble training needs both classes");
  }
  const Split split = StratifiedSplit(train, {options.validation_fraction, options.seed, true});
  const auto fit_rows = split.train.Rows();
  const auto fit_labels = split.train.Labels();
  const auto val_rows = split.test.Rows();
  const auto val_labels = split.test.Labels();

  std::vector<EnsembleMember> members;
  for (const auto& descriptor : EnumerateProperties()) {
    TrainConfig member_config = config;
    member_config.allowed_features = descriptor.subset;
    EnsembleMember member{descriptor, TrainBoostedTrees(fit_rows, fit_labels, member_config), {}};
    std::vector<int> preds;
    preds.reserve(val_rows.size());
    for (const auto& row : val_rows) preds.push_back(Classify(member.model, row, options.vote_threshold));
    const ConfusionMatrix cm = ConfusionMatrix::FromPredictions(preds, val_labels);
    member.effectiveness = {EffectivenessPars(cm, 0), EffectivenessPars(cm, 1)};
    members.push_back(std::move(member));
  }
  return PropertyEnsemble(std::move(members), options);
}

std::string PropertyEnsemble::ToJson() const {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  doc["version"] = kSchemaVersion;
  doc["options"] = {{"validation_fraction", options_.validation_fraction},
                    {"seed", options_.seed},
                    {"vote_threshold", options_.vote_threshold},
                    {"tie_class", options_.tie_class}};
  nlohmann::ordered_json members = nlohmann::ordered_json::array();
  for (const auto& m : members_) {
    nlohmann::ordered_json features = nlohmann::ordered_json::array();
    for (int f = 0; f < kNumFeatures; ++f) {
      if (m.descriptor.subset[f]) features.push_back(kFeatureNames[f]);
    }
    nlohmann::ordered_json jm;
    jm["id"] = m.descriptor.id;
    jm["features"] = std::move(features);
    jm["description"] = m.descriptor.description;
    jm["effectiveness"] = m.effectiveness;
    jm["model"] = nlohmann::ordered_json::parse(m.model.ToJson());
    members.push_back(std::move(jm));
  }
  doc["members"] = std::move(members);
  return doc.dump(1) + "\n";
}

PropertyEnsemble PropertyEnsemble::FromJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptModel, e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") || !doc.contains("version")) {
    throw Error(ErrorCode::kCorruptModel, "missing schema header");
  }
  if (doc["schema"] != kSchema || doc["version"] != kSchemaVersion) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "expected " + std::string(kSchema) + " v" + std::to_string(kSchemaVersion) +
                    ", found " + doc["schema"].dump());
  }
  try {
    EnsembleOptions options;
    const auto& jo = doc.at("options");
    options.validation_fraction = jo.at("validation_fraction").get<double>();
    options.seed = jo.at("seed").get<std::uint64_t>();
    options.vote_threshold = jo.at("vote_threshold").get<double>();
    options.tie_class = jo.at("tie_class").get<int>();
    const auto descriptors = EnumerateProperties();
    std::vector<EnsembleMember> members;
    for (const auto& jm : doc.at("members")) {
      const int id = jm.at("id").get<int>();
      if (id < 1 || id > kNumProperties) throw Error(ErrorCode::kCorruptModel, "bad property id");
      EnsembleMember m{descriptors[id - 1], BoostedTreeModel::FromJson(jm.at("model").dump()),
                       jm.at("effectiveness").get<std::array<double, 2>>()};
      members.push_back(std::move(m));
    }
    if (members.size() != static_cast<std::size_t>(kNumProperties)) {
      throw Error(ErrorCode::kCorruptModel, "ensemble must have 31 members");
    }
    return PropertyEnsemble(std::move(members), options);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptModel, e.what());
  }
}

}  // namespace htxai
