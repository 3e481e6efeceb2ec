/*
 * Copyright 2026 The imbal Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "imbal/eval/tree.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace imbal::eval {
namespace {

constexpr double kFeatureTolerance = 1e-7;
constexpr double kImpurityTolerance = 1e-12;

// Weighted class counts for Gini splits.
struct GiniStats {
  explicit GiniStats(int classes) : counts(static_cast<size_t>(classes), 0.0) {}
  std::vector<double> counts;
  double total = 0;

  void Add(int label, double w) {
    counts[static_cast<size_t>(label)] += w;
    total += w;
  }
  void Remove(int label, double w) {
    counts[static_cast<size_t>(label)] -= w;
    total -= w;
  }
  // Sum of squared counts over total; larger means purer.
  double Proxy() const {
    if (total <= 0) return 0;
    double s = 0;
    for (double c : counts) s += c * c;
    return s / total;
  }
  double Impurity() const {
    if (total <= 0) return 0;
    double s = 0;
    for (double c : counts) s += (c / total) * (c / total);
    return 1.0 - s;
  }
  void Value(std::vector<double>& out) const {
    for (size_t k = 0; k < counts.size(); ++k) {
      out.push_back(total > 0 ? counts[k] / total : 0.0);
    }
  }
};

struct SquaredErrorStats {
  explicit SquaredErrorStats(int) {}
  double sum = 0;
  double sum_sq = 0;
  double total = 0;

  void Add(double y, double w) {
    sum += w * y;
    sum_sq += w * y * y;
    total += w;
  }
  void Remove(double y, double w) {
    sum -= w * y;
    sum_sq -= w * y * y;
    total -= w;
  }
  double Proxy() const { return total > 0 ? sum * sum / total : 0.0; }
  double Impurity() const {
    if (total <= 0) return 0;
    const double mean = sum / total;
    return std::max(0.0, sum_sq / total - mean * mean);
  }
  void Value(std::vector<double>& out) const {
    out.push_back(total > 0 ? sum / total : 0.0);
  }
};

}  // namespace

class TreeBuilder {
 public:
  template <typename Stats, typename Target>
  static DecisionTree Build(const Matrix& x, const Target& target, int width,
                            int stats_arg, const std::vector<double>& weights,
                            const TreeOptions& options, Rng& rng) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (n == 0) throw std::invalid_argument("tree: no training rows");
    if (!weights.empty() && static_cast<Eigen::Index>(weights.size()) != n) {
      throw std::invalid_argument("tree: weight count mismatch");
    }
    auto weight = [&](int row) {
      return weights.empty() ? 1.0 : weights[static_cast<size_t>(row)];
    };
    std::vector<int> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) {
      if (weight(r) > 0) rows.push_back(r);
    }
    if (rows.empty()) throw std::invalid_argument("tree: all weights are zero");

    const int max_features =
        options.max_features > 0 ? std::min<int>(options.max_features, static_cast<int>(p))
                                 : static_cast<int>(p);
    const int min_leaf = std::max(1, options.min_samples_leaf);

    DecisionTree tree;
    tree.width_ = width;
    struct Task {
      int node;
      size_t begin;
      size_t end;
    };
    std::vector<Task> stack;
    tree.nodes_.push_back({});
    stack.push_back({0, 0, rows.size()});

    std::vector<int> features(static_cast<size_t>(p));
    std::vector<std::pair<double, int>> sorted;
    while (!stack.empty()) {
      const Task task = stack.back();
      stack.pop_back();
      const int depth = tree.nodes_[static_cast<size_t>(task.node)].depth;
      const size_t count = task.end - task.begin;

      Stats node_stats(stats_arg);
      for (size_t i = task.begin; i < task.end; ++i) {
        node_stats.Add(target[static_cast<size_t>(rows[i])], weight(rows[i]));
      }
      tree.nodes_[static_cast<size_t>(task.node)].value = tree.values_.size();
      node_stats.Value(tree.values_);

      const bool stop = static_cast<int>(count) < options.min_samples_split ||
                        static_cast<int>(count) < 2 * min_leaf ||
                        (options.max_depth > 0 && depth >= options.max_depth) ||
                        node_stats.Impurity() <= kImpurityTolerance;
      if (stop) continue;

      // Draw features without replacement; constant ones do not count
      // towards the budget.
      std::iota(features.begin(), features.end(), 0);
      int examined = 0;
      double best_proxy = -1.0;
      int best_feature = -1;
      double best_threshold = 0;
      for (size_t drawn = 0; drawn < features.size() && examined < max_features;
           ++drawn) {
        const size_t pick = drawn + rng.Index(features.size() - drawn);
        std::swap(features[drawn], features[pick]);
        const int f = features[drawn];

        sorted.clear();
        for (size_t i = task.begin; i < task.end; ++i) {
          sorted.emplace_back(x(rows[i], f), rows[i]);
        }
        std::sort(sorted.begin(), sorted.end());
        if (sorted.back().first <= sorted.front().first + kFeatureTolerance) {
          continue;
        }
        ++examined;

        Stats left(stats_arg);
        Stats right = node_stats;
        for (size_t i = 0; i + 1 < sorted.size(); ++i) {
          const int row = sorted[i].second;
          left.Add(target[static_cast<size_t>(row)], weight(row));
          right.Remove(target[static_cast<size_t>(row)], weight(row));
          if (sorted[i + 1].first <= sorted[i].first + kFeatureTolerance) continue;
          const size_t n_left = i + 1;
          if (static_cast<int>(n_left) < min_leaf ||
              static_cast<int>(sorted.size() - n_left) < min_leaf) {
            continue;
          }
          const double proxy = left.Proxy() + right.Proxy();
          if (proxy > best_proxy) {
            best_proxy = proxy;
            best_feature = f;
            double t = 0.5 * (sorted[i].first + sorted[i + 1].first);
            if (t >= sorted[i + 1].first) t = sorted[i].first;
            best_threshold = t;
          }
        }
      }
      if (best_feature < 0) continue;

      auto mid = std::partition(
          rows.begin() + static_cast<std::ptrdiff_t>(task.begin),
          rows.begin() + static_cast<std::ptrdiff_t>(task.end),
          [&](int r) { return x(r, best_feature) <= best_threshold; });
      const auto split = static_cast<size_t>(mid - rows.begin());

      const int left_id = static_cast<int>(tree.nodes_.size());
      tree.nodes_.push_back({-1, 0, -1, -1, depth + 1, 0});
      tree.nodes_.push_back({-1, 0, -1, -1, depth + 1, 0});
      DecisionTree::Node& node = tree.nodes_[static_cast<size_t>(task.node)];
      node.feature = best_feature;
      node.threshold = best_threshold;
      node.left = left_id;
      node.right = left_id + 1;
      // Right child is pushed first so the left subtree is built first.
      stack.push_back({left_id + 1, split, task.end});
      stack.push_back({left_id, task.begin, split});
    }
    return tree;
  }
};

DecisionTree DecisionTree::FitClassifier(const Matrix& x,
                                         const std::vector<int>& labels,
                                         int num_classes,
                                         const std::vector<double>& weights,
                                         const TreeOptions& options, Rng& rng) {
  if (static_cast<Eigen::Index>(labels.size()) != x.rows()) {
    throw std::invalid_argument("tree: label count mismatch");
  }
  if (num_classes < 1) throw std::invalid_argument("tree: need >= 1 class");
  for (int label : labels) {
    if (label < 0 || label >= num_classes) {
      throw std::invalid_argument("tree: label out of range");
    }
  }
  return TreeBuilder::Build<GiniStats>(x, labels, num_classes, num_classes,
                                       weights, options, rng);
}

DecisionTree DecisionTree::FitRegressor(const Matrix& x,
                                        const Eigen::VectorXd& target,
                                        const TreeOptions& options, Rng& rng) {
  if (target.size() != x.rows()) {
    throw std::invalid_argument("tree: target size mismatch");
  }
  const std::vector<double> values(target.data(), target.data() + target.size());
  return TreeBuilder::Build<SquaredErrorStats>(x, values, 1, 0, {}, options, rng);
}

int DecisionTree::LeafIndex(const Matrix& x, Eigen::Index row) const {
  int id = 0;
  while (nodes_[static_cast<size_t>(id)].feature >= 0) {
    const Node& node = nodes_[static_cast<size_t>(id)];
    id = x(row, node.feature) <= node.threshold ? node.left : node.right;
  }
  return id;
}

std::span<const double> DecisionTree::LeafValue(int leaf) const {
  return {values_.data() + nodes_[static_cast<size_t>(leaf)].value,
          static_cast<size_t>(width_)};
}

void DecisionTree::SetLeafValue(int leaf, std::span<const double> value) {
  if (static_cast<int>(value.size()) != width_) {
    throw std::invalid_argument("tree: leaf value width mismatch");
  }
  std::copy(value.begin(), value.end(),
            values_.begin() +
                static_cast<std::ptrdiff_t>(nodes_[static_cast<size_t>(leaf)].value));
}

int DecisionTree::NumLeaves() const {
  return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(),
                                        [](const Node& n) { return n.feature < 0; }));
}

int DecisionTree::Depth() const {
  int d = 0;
  for (const Node& n : nodes_) d = std::max(d, n.depth);
  return d;
}

}  // namespace imbal::eval
