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


#ifndef IMBAL_EVAL_TREE_H_
#define IMBAL_EVAL_TREE_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "imbal/common/random.h"

namespace imbal::eval {

using Matrix = Eigen::MatrixXd;

struct TreeOptions {
  int max_depth = 0;     // 0: unlimited
  int max_features = 0;  // features examined per split; 0: all
  int min_samples_split = 2;
  int min_samples_leaf = 1;
};

// Binary CART tree over dense numeric features. Rows go left when
// x[feature] <= threshold. Classification trees split on weighted Gini
// impurity and store the weighted class distribution in each leaf;
// regression trees split on squared error and store the leaf mean.
class DecisionTree {
 public:
  // labels in [0, num_classes). Empty weights means unit weights; rows with
  // zero weight are ignored.
  static DecisionTree FitClassifier(const Matrix& x,
                                    const std::vector<int>& labels,
                                    int num_classes,
                                    const std::vector<double>& weights,
                                    const TreeOptions& options, Rng& rng);
  static DecisionTree FitRegressor(const Matrix& x,
                                   const Eigen::VectorXd& target,
                                   const TreeOptions& options, Rng& rng);

  int LeafIndex(const Matrix& x, Eigen::Index row) const;
  // Normalised class distribution (classification) or {mean} (regression).
  std::span<const double> LeafValue(int leaf) const;
  void SetLeafValue(int leaf, std::span<const double> value);

  int NumNodes() const { return static_cast<int>(nodes_.size()); }
  int NumLeaves() const;
  int Depth() const;
  int output_width() const { return width_; }

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0;
    int left = -1;
    int right = -1;
    int depth = 0;
    size_t value = 0;  // offset into values_
  };

  DecisionTree() = default;

  std::vector<Node> nodes_;
  std::vector<double> values_;  // width_ entries per node, build order
  int width_ = 1;

  friend class TreeBuilder;
};

}  // namespace imbal::eval

#endif  // IMBAL_EVAL_TREE_H_
