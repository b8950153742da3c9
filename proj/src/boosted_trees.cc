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

#include "htxai/boosted_trees.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <numeric>

#include "htxai/error.h"
#include "htxai/file_util.h"

namespace htxai {

namespace {
constexpr double kMarginClamp = 30.0;
}  // namespace

double Sigmoid(double margin) {
  margin = std::clamp(margin, -kMarginClamp, kMarginClamp);
  return 1.0 / (1.0 + std::exp(-margin));
}

void TrainConfig::Validate() const {
  if (n_estimators < 1) throw Error(ErrorCode::kInvalidArgument, "n_estimators must be >= 1");
  if (max_depth < 1) throw Error(ErrorCode::kInvalidArgument, "max_depth must be >= 1");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "learning_rate must lie in (0, 1]");
  }
  if (positive_class_weight && !(*positive_class_weight > 0.0 && std::isfinite(*positive_class_weight))) {
    throw Error(ErrorCode::kInvalidArgument, "positive_class_weight must be > 0");
  }
  if (!(l2_leaf_regularization >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "l2_leaf_regularization must be >= 0");
  }
  if (!(min_child_weight >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "min_child_weight must be >= 0");
  if (std::none_of(allowed_features.begin(), allowed_features.end(), [](bool b) { return b; })) {
    throw Error(ErrorCode::kInvalidArgument, "at least one feature must be allowed");
  }
}

double RegressionTree::Evaluate(const FeatureRow& x) const {
  int k = 0;
  while (!nodes[k].is_leaf()) {
    const TreeNode& n = nodes[k];
    k = x[n.feature] < n.threshold ? n.left : n.right;
  }
  return nodes[k].value;
}

int RegressionTree::Depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].is_leaf()) continue;
    depth[nodes[k].left] = depth[nodes[k].right] = depth[k] + 1;
    deepest = std::max(deepest, depth[k] + 1);
  }
  return deepest;
}

BoostedTreeModel::BoostedTreeModel(TrainConfig config, double base_score,
                                   std::vector<RegressionTree> trees)
    : config_(std::move(config)), base_score_(base_score), trees_(std::move(trees)) {}

double BoostedTreeModel::Margin(const FeatureRow& x) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.Evaluate(x);
  return base_score_ + config_.learning_rate * sum;
}

double BoostedTreeModel::PredictProba(const FeatureRow& x) const { return Sigmoid(Margin(x)); }

std::array<bool, kNumFeatures> BoostedTreeModel::UsedFeatures() const {
  std::array<bool, kNumFeatures> used{};
  for (const auto& tree : trees_) {
    for (const auto& n : tree.nodes) {
      if (!n.is_leaf()) used[n.feature] = true;
    }
  }
  return used;
}

namespace {

// One leaf reached while walking a tree under all coalitions: reached by
// exactly the coalitions S with `in` a subset of S and S disjoint from `ex`.
struct LeafHit {
  unsigned in;
  unsigned ex;
  double value;
};

// Depth-first walk of one tree for x against background point b. Where the
// two go different ways on a feature not yet decided, the walk forks into
// "feature from x" and "feature from b".
struct PendingBranch {
  int node;
  unsigned in;
  unsigned ex;
};

void WalkCoalitions(const RegressionTree& tree, const FeatureRow& x, const FeatureRow& b,
                    std::vector<PendingBranch>& stack, std::vector<LeafHit>& hits) {
  stack.clear();
  stack.push_back({0, 0, 0});
  const TreeNode* nodes = tree.nodes.data();
  while (!stack.empty()) {
    PendingBranch f = stack.back();
    stack.pop_back();
    int k = f.node;
    for (;;) {
      const TreeNode& n = nodes[k];
      if (n.feature < 0) {
        hits.push_back({f.in, f.ex, n.value});
        break;
      }
      const unsigned bit = 1u << n.feature;
      const int x_child = x[n.feature] < n.threshold ? n.left : n.right;
      if (f.in & bit) {
        k = x_child;
        continue;
      }
      const int b_child = b[n.feature] < n.threshold ? n.left : n.right;
      if ((f.ex & bit) || x_child == b_child) {
        k = b_child;
        continue;
      }
      stack.push_back({b_child, f.in, f.ex | bit});
      f.in |= bit;
      k = x_child;
    }
  }
}

// Background points that take the same branch at every split of a tree
// produce the same walk for any x, so each tree walks once per group.
class TreeCoalitionEvaluator final : public CoalitionEvaluator {
 public:
  TreeCoalitionEvaluator(const BoostedTreeModel& model, std::span<const FeatureRow> background)
      : model_(model), total_(static_cast<double>(background.size())) {
    std::map<FeatureRow, int> unique;
    for (const auto& b : background) ++unique[b];
    for (const auto& [b, count] : unique) {
      points_.push_back(b);
      counts_.push_back(count);
    }
    for (const auto& tree : model.trees()) {
      for (const auto& node : tree.nodes) {
        if (!node.is_leaf()) thresholds_[node.feature].push_back(node.threshold);
      }
    }
    for (auto& t : thresholds_) {
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    for (const auto& tree : model.trees()) {
      std::map<std::vector<bool>, std::size_t> group_of;
      std::vector<Group> groups;
      for (std::size_t i = 0; i < points_.size(); ++i) {
        std::vector<bool> signature;
        signature.reserve(tree.nodes.size());
        for (const auto& n : tree.nodes) signature.push_back(!n.is_leaf() && points_[i][n.feature] < n.threshold);
        auto [it, inserted] = group_of.emplace(std::move(signature), groups.size());
        if (inserted) groups.push_back({i, {}});
        groups[it->second].members.push_back(static_cast<int>(i));
      }
      groups_.push_back(std::move(groups));
    }
  }

  CoalitionValues Evaluate(const FeatureRow& x) const override {
    const std::size_t n = points_.size();
    // Features on which some split separates x from the point; no other
    // feature can change which leaves a hybrid reaches.
    std::vector<unsigned> diff(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (int f = 0; f < kNumFeatures; ++f) {
        const auto [lo, hi] = std::minmax(x[f], points_[i][f]);
        const auto it = std::upper_bound(thresholds_[f].begin(), thresholds_[f].end(), lo);
        if (it != thresholds_[f].end() && *it <= hi) diff[i] |= 1u << f;
      }
    }
    // Per point: the leaves every coalition reaches, plus a table over the
    // subsets of diff for leaves reached only under an (in, ex) constraint.
    std::vector<double> shared(n, 0.0);
    std::vector<double> table(n * kNumCoalitions, 0.0);
    std::vector<unsigned> used(n, 0);  // features named by any constraint
    std::vector<PendingBranch> stack;
    std::vector<LeafHit> hits;
    for (std::size_t t = 0; t < groups_.size(); ++t) {
      const RegressionTree& tree = model_.trees()[t];
      for (const Group& g : groups_[t]) {
        hits.clear();
        WalkCoalitions(tree, x, points_[g.representative], stack, hits);
        for (const LeafHit& h : hits) {
          if (h.in == 0 && h.ex == 0) {
            for (int m : g.members) shared[m] += h.value;
            continue;
          }
          for (int m : g.members) {
            used[m] |= h.in | h.ex;
            double* row = &table[static_cast<std::size_t>(m) * kNumCoalitions];
            const unsigned free = diff[m] & ~(h.in | h.ex);
            for (unsigned sub = free;; sub = (sub - 1) & free) {
              row[h.in | sub] += h.value;
              if (sub == 0) break;
            }
          }
        }
      }
    }

    // Rows are constant along features no constraint names, so only
    // subsets of `used` need a sigmoid.
    CoalitionValues values{};
    std::array<double, kNumCoalitions> prob{};
    const double lr = model_.config().learning_rate;
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned d = used[i];
      const double* row = &table[i * kNumCoalitions];
      for (unsigned s = d;; s = (s - 1) & d) {
        prob[s] = counts_[i] * Sigmoid(model_.base_score() + lr * (shared[i] + row[s]));
        if (s == 0) break;
      }
      for (unsigned s = 0; s < kNumCoalitions; ++s) values[s] += prob[s & d];
    }
    for (double& v : values) v /= total_;
    return values;
  }

 private:
  struct Group {
    std::size_t representative;
    std::vector<int> members;
  };

  const BoostedTreeModel& model_;
  double total_;
  std::vector<FeatureRow> points_;
  std::vector<int> counts_;
  std::vector<std::vector<Group>> groups_;  // per tree
  std::array<std::vector<double>, kNumFeatures> thresholds_;
};

}  // namespace

std::unique_ptr<CoalitionEvaluator> BoostedTreeModel::PrepareCoalitions(
    std::span<const FeatureRow> background) const {
  if (background.empty()) throw Error(ErrorCode::kInvalidArgument, "empty background");
  return std::make_unique<TreeCoalitionEvaluator>(*this, background);
}

// ---------------------------------------------------------------------------
// Training

double ClassWeightRatio(std::span<const int> labels) {
  const auto n_trojan = std::count(labels.begin(), labels.end(), 1);
  const auto n_benign = static_cast<std::ptrdiff_t>(labels.size()) - n_trojan;
  if (n_trojan == 0 || n_benign == 0) {
    throw Error(ErrorCode::kSingleClassDataset, "both classes are required");
  }
  return static_cast<double>(n_benign) / static_cast<double>(n_trojan);
}

namespace {

double WeightedLogLoss(std::span<const double> p, std::span<const int> y, double w_pos) {
  double total = 0.0, weight = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double w = y[i] == 1 ? w_pos : 1.0;
    total += w * -(y[i] == 1 ? std::log(p[i]) : std::log1p(-p[i]));
    weight += w;
  }
  return total / weight;
}

struct SplitCandidate {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& columns,
              const std::vector<std::vector<std::uint32_t>>& presorted,
              const std::array<bool, kNumFeatures>& usable, const TrainConfig& config)
      : columns_(columns), presorted_(presorted), usable_(usable), config_(config) {}

  // Returns the tree and writes each row's leaf value into `row_output`.
  RegressionTree Build(std::span<const double> g, std::span<const double> h,
                       std::vector<double>& row_output) {
    const std::size_t n = g.size();
    RegressionTree tree;
    tree.nodes.emplace_back();
    node_of_row_.assign(n, 0);
    std::vector<int> active{0};
    const double lambda = config_.l2_leaf_regularization;

    for (int depth = 0; !active.empty(); ++depth) {
      slot_of_node_.assign(tree.nodes.size(), -1);
      for (std::size_t s = 0; s < active.size(); ++s) slot_of_node_[active[s]] = static_cast<int>(s);
      std::vector<double> G(active.size(), 0.0), H(active.size(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const int slot = SlotOf(i);
        if (slot < 0) continue;
        G[slot] += g[i];
        H[slot] += h[i];
      }

      std::vector<SplitCandidate> best(active.size());
      if (depth < config_.max_depth) FindSplits(g, h, G, H, best);

      std::vector<int> next;
      for (std::size_t s = 0; s < active.size(); ++s) {
        const int k = active[s];
        if (best[s].feature < 0) {
          tree.nodes[k].value = -G[s] / (H[s] + lambda);
          continue;
        }
        const int left = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        TreeNode& node = tree.nodes[k];
        node.feature = best[s].feature;
        node.threshold = best[s].threshold;
        node.left = left;
        node.right = left + 1;
        next.push_back(left);
        next.push_back(left + 1);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const int k = node_of_row_[i];
        const TreeNode& node = tree.nodes[k];
        if (node.is_leaf()) continue;
        node_of_row_[i] = columns_[node.feature][i] < node.threshold ? node.left : node.right;
      }
      active = std::move(next);
    }

    row_output.resize(n);
    for (std::size_t i = 0; i < n; ++i) row_output[i] = tree.nodes[node_of_row_[i]].value;
    return tree;
  }

 private:
  int SlotOf(std::size_t row) const {
    const int k = node_of_row_[row];
    return k < static_cast<int>(slot_of_node_.size()) ? slot_of_node_[k] : -1;
  }

  // Exact greedy search. Features are scanned in index order and thresholds
  // ascending; only a strictly larger gain replaces the incumbent.
  void FindSplits(std::span<const double> g, std::span<const double> h, const std::vector<double>& G,
                  const std::vector<double>& H, std::vector<SplitCandidate>& best) {
    const double lambda = config_.l2_leaf_regularization;
    const double mcw = config_.min_child_weight;
    const std::size_t slots = G.size();
    std::vector<double> parent_score(slots);
    for (std::size_t s = 0; s < slots; ++s) parent_score[s] = G[s] * G[s] / (H[s] + lambda);

    std::vector<double> GL(slots), HL(slots), last(slots);
    std::vector<char> seen(slots);
    for (int f = 0; f < kNumFeatures; ++f) {
      if (!usable_[f]) continue;
      std::fill(GL.begin(), GL.end(), 0.0);
      std::fill(HL.begin(), HL.end(), 0.0);
      std::fill(seen.begin(), seen.end(), 0);
      const auto& column = columns_[f];
      for (std::uint32_t i : presorted_[f]) {
        const int slot = SlotOf(i);
        if (slot < 0) continue;
        const double v = column[i];
        if (seen[slot] && v != last[slot]) {
          const double gl = GL[slot], hl = HL[slot];
          const double gr = G[slot] - gl, hr = H[slot] - hl;
          if (hl >= mcw && hr >= mcw) {
            const double gain =
                0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - parent_score[slot]);
            if (gain > 0.0 && gain > best[slot].gain) {
              best[slot] = {gain, f, 0.5 * (last[slot] + v)};
            }
          }
        }
        GL[slot] += g[i];
        HL[slot] += h[i];
        last[slot] = v;
        seen[slot] = 1;
      }
    }
  }

  const std::vector<std::vector<double>>& columns_;
  const std::vector<std::vector<std::uint32_t>>& presorted_;
  const std::array<bool, kNumFeatures>& usable_;
  const TrainConfig& config_;
  std::vector<int> node_of_row_;
  std::vector<int> slot_of_node_;
};

}  // namespace

BoostedTreeModel TrainBoostedTrees(std::span<const FeatureRow> rows, std::span<const int> labels,
                                   const TrainConfig& config, TrainDiagnostics* diagnostics) {
  config.Validate();
  if (rows.size() != labels.size()) {
    throw Error(ErrorCode::kMismatchedLengths, "rows and labels differ in length");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw Error(ErrorCode::kInvalidArgument, "labels must be 0 or 1");
  }
  const double ratio = ClassWeightRatio(labels);
  TrainConfig snapshot = config;
  const double w_pos = config.positive_class_weight.value_or(ratio);
  snapshot.positive_class_weight = w_pos;

  const std::size_t n = rows.size();
  std::vector<std::vector<double>> columns(kNumFeatures, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (int f = 0; f < kNumFeatures; ++f) columns[f][i] = rows[i][f];
  }
  std::vector<std::string> warnings;
  std::array<bool, kNumFeatures> usable{};
  std::vector<std::vector<std::uint32_t>> presorted(kNumFeatures);
  for (int f = 0; f < kNumFeatures; ++f) {
    if (!config.allowed_features[f]) continue;
    const auto [lo, hi] = std::minmax_element(columns[f].begin(), columns[f].end());
    if (*lo == *hi) {
      warnings.push_back("DegenerateFeature: " + std::string(kFeatureNames[f]) +
                         " is constant and will not be split on");
      continue;
    }
    usable[f] = true;
    auto& order = presorted[f];
    order.resize(n);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return columns[f][a] < columns[f][b];
    });
  }

  const double base_score = 0.0;
  std::vector<double> raw(n, 0.0), p(n), g(n), h(n), leaf_out;
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) p[i] = Sigmoid(base_score + snapshot.learning_rate * raw[i]);
  };
  refresh();
  std::vector<double> losses{WeightedLogLoss(p, labels, w_pos)};

  TreeBuilder builder(columns, presorted, usable, snapshot);
  std::vector<RegressionTree> trees;
  trees.reserve(snapshot.n_estimators);
  for (int round = 0; round < snapshot.n_estimators; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      const double w = labels[i] == 1 ? w_pos : 1.0;
      g[i] = w * (p[i] - labels[i]);
      h[i] = w * p[i] * (1.0 - p[i]);
    }
    trees.push_back(builder.Build(g, h, leaf_out));
    for (std::size_t i = 0; i < n; ++i) raw[i] += leaf_out[i];
    refresh();
    losses.push_back(WeightedLogLoss(p, labels, w_pos));
  }

  if (diagnostics != nullptr) {
    diagnostics->loss_history = std::move(losses);
    diagnostics->warnings = std::move(warnings);
    diagnostics->positive_class_weight = w_pos;
  }
  return BoostedTreeModel(std::move(snapshot), base_score, std::move(trees));
}

BoostedTreeModel TrainBoostedTrees(const Dataset& dataset, const TrainConfig& config,
                                   TrainDiagnostics* diagnostics) {
  const auto rows = dataset.Rows();
  const auto labels = dataset.Labels();
  return TrainBoostedTrees(rows, labels, config, diagnostics);
}

int Classify(const ProbabilityModel& model, const FeatureRow& x, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in (0, 1)");
  }
  return model.PredictProba(x) >= threshold ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

nlohmann::ordered_json ConfigToJson(const TrainConfig& c) {
  nlohmann::ordered_json allowed = nlohmann::ordered_json::array();
  for (int f = 0; f < kNumFeatures; ++f) {
    if (c.allowed_features[f]) allowed.push_back(kFeatureNames[f]);
  }
  nlohmann::ordered_json j;
  j["n_estimators"] = c.n_estimators;
  j["max_depth"] = c.max_depth;
  j["learning_rate"] = c.learning_rate;
  j["positive_class_weight"] =
      c.positive_class_weight ? nlohmann::ordered_json(*c.positive_class_weight) : nlohmann::ordered_json();
  j["l2_leaf_regularization"] = c.l2_leaf_regularization;
  j["min_child_weight"] = c.min_child_weight;
  j["seed"] = c.seed;
  j["allowed_features"] = std::move(allowed);
  return j;
}

TrainConfig ConfigFromJson(const nlohmann::json& j) {
  TrainConfig c;
  c.n_estimators = j.at("n_estimators").get<int>();
  c.max_depth = j.at("max_depth").get<int>();
  c.learning_rate = j.at("learning_rate").get<double>();
  if (!j.at("positive_class_weight").is_null()) {
    c.positive_class_weight = j.at("positive_class_weight").get<double>();
  }
  c.l2_leaf_regularization = j.at("l2_leaf_regularization").get<double>();
  c.min_child_weight = j.at("min_child_weight").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.allowed_features.fill(false);
  for (const auto& name : j.at("allowed_features")) {
    auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), name.get<std::string>());
    if (it == kFeatureNames.end()) throw Error(ErrorCode::kCorruptModel, "unknown feature name");
    c.allowed_features[it - kFeatureNames.begin()] = true;
  }
  return c;
}

}  // namespace

std::string BoostedTreeModel::ToJson() const {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchema;
  doc["version"] = kSchemaVersion;
  doc["feature_names"] = kFeatureNames;
  doc["config"] = ConfigToJson(config_);
  doc["base_score"] = base_score_;
  nlohmann::ordered_json trees = nlohmann::ordered_json::array();
  for (const auto& tree : trees_) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : tree.nodes) {
      nlohmann::ordered_json node;
      if (n.is_leaf()) {
        node["leaf"] = n.value;
      } else {
        node["feature"] = n.feature;
        node["threshold"] = n.threshold;
        node["left"] = n.left;
        node["right"] = n.right;
      }
      nodes.push_back(std::move(node));
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  doc["trees"] = std::move(trees);
  return doc.dump(1) + "\n";
}

BoostedTreeModel BoostedTreeModel::FromJson(std::string_view text) {
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
                    ", found " + doc["schema"].dump() + " v" + doc["version"].dump());
  }
  try {
    TrainConfig config = ConfigFromJson(doc.at("config"));
    const double base_score = doc.at("base_score").get<double>();
    std::vector<RegressionTree> trees;
    for (const auto& jt : doc.at("trees")) {
      RegressionTree tree;
      for (const auto& jn : jt.at("nodes")) {
        TreeNode n;
        if (jn.contains("leaf")) {
          n.value = jn.at("leaf").get<double>();
          if (!std::isfinite(n.value)) throw Error(ErrorCode::kCorruptModel, "non-finite leaf");
        } else {
          n.feature = jn.at("feature").get<int>();
          n.threshold = jn.at("threshold").get<double>();
          n.left = jn.at("left").get<int>();
          n.right = jn.at("right").get<int>();
        }
        tree.nodes.push_back(n);
      }
      const int size = static_cast<int>(tree.nodes.size());
      if (size == 0) throw Error(ErrorCode::kCorruptModel, "empty tree");
      for (int k = 0; k < size; ++k) {
        const TreeNode& n = tree.nodes[k];
        if (n.is_leaf()) continue;
        if (n.feature >= kNumFeatures || n.left <= k || n.right <= k || n.left >= size ||
            n.right >= size || !std::isfinite(n.threshold)) {
          throw Error(ErrorCode::kCorruptModel, "invalid split node");
        }
      }
      trees.push_back(std::move(tree));
    }
    return BoostedTreeModel(std::move(config), base_score, std::move(trees));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptModel, e.what());
  }
}

void BoostedTreeModel::Save(const std::string& path) const { WriteTextFile(path, ToJson()); }

BoostedTreeModel BoostedTreeModel::Load(const std::string& path) {
  return FromJson(ReadTextFile(path));
}

}  // namespace htxai
