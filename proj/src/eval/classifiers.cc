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


#include "imbal/eval/classifiers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace imbal::eval {
namespace {

void CheckBinary(const Matrix& x, const std::vector<int>& labels) {
  if (static_cast<Eigen::Index>(labels.size()) != x.rows()) {
    throw std::invalid_argument("classifier: label count mismatch");
  }
  bool has[2] = {false, false};
  for (int y : labels) {
    if (y != 0 && y != 1) throw std::invalid_argument("classifier: labels must be 0/1");
    has[y] = true;
  }
  if (!has[0] || !has[1]) {
    throw std::invalid_argument("classifier: training data has a single class");
  }
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace

std::string ClassifierName(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kRandomForest: return "random_forest";
    case ClassifierKind::kLogistic: return "logistic";
    case ClassifierKind::kGradientBoosting: return "gradient_boosting";
    case ClassifierKind::kKnn: return "knn";
    case ClassifierKind::kDecisionTree: return "decision_tree";
  }
  throw std::invalid_argument("unknown classifier kind");
}

ClassifierKind ParseClassifier(std::string_view name) {
  for (ClassifierKind kind : kAllClassifiers) {
    if (ClassifierName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown classifier '" + std::string(name) + "'");
}

// Random forest

void RandomForest::Fit(const Matrix& x, const std::vector<int>& labels) {
  CheckBinary(x, labels);
  FitMulticlass(x, labels, 2);
}

void RandomForest::FitMulticlass(const Matrix& x, const std::vector<int>& labels,
                                 int num_classes) {
  if (x.rows() == 0) throw std::invalid_argument("random forest: no rows");
  classes_ = num_classes;
  const auto n = static_cast<size_t>(x.rows());
  TreeOptions tree_options;
  tree_options.max_depth = options_.max_depth;
  tree_options.max_features =
      options_.max_features > 0
          ? options_.max_features
          : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(x.cols()))));
  trees_.clear();
  trees_.reserve(static_cast<size_t>(options_.trees));
  std::vector<double> weights;
  for (int t = 0; t < options_.trees; ++t) {
    Rng rng(DeriveSeed(seed_, static_cast<uint64_t>(t)));
    weights.assign(n, options_.bootstrap ? 0.0 : 1.0);
    if (options_.bootstrap) {
      for (size_t i = 0; i < n; ++i) weights[rng.Index(n)] += 1.0;
    }
    trees_.push_back(DecisionTree::FitClassifier(x, labels, num_classes, weights,
                                                 tree_options, rng));
  }
}

Matrix RandomForest::PredictClassProba(const Matrix& x) const {
  if (trees_.empty()) throw std::logic_error("random forest: not fitted");
  Matrix out = Matrix::Zero(x.rows(), classes_);
  for (const DecisionTree& tree : trees_) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const auto leaf = tree.LeafValue(tree.LeafIndex(x, r));
      for (int k = 0; k < classes_; ++k) out(r, k) += leaf[static_cast<size_t>(k)];
    }
  }
  return out / static_cast<double>(trees_.size());
}

Eigen::VectorXd RandomForest::PredictProba(const Matrix& x) const {
  return PredictClassProba(x).col(1);
}

std::vector<int> RandomForest::Predict(const Matrix& x) const {
  const Matrix p = PredictClassProba(x);
  std::vector<int> out(static_cast<size_t>(p.rows()));
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < p.cols(); ++k) {
      if (p(r, k) > p(r, best)) best = k;
    }
    out[static_cast<size_t>(r)] = static_cast<int>(best);
  }
  return out;
}

// Single tree

void TreeClassifier::Fit(const Matrix& x, const std::vector<int>& labels) {
  CheckBinary(x, labels);
  Rng rng(seed_);
  tree_.clear();
  tree_.push_back(DecisionTree::FitClassifier(x, labels, 2, {}, TreeOptions{}, rng));
}

Eigen::VectorXd TreeClassifier::PredictProba(const Matrix& x) const {
  if (tree_.empty()) throw std::logic_error("decision tree: not fitted");
  Eigen::VectorXd out(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    out(r) = tree_[0].LeafValue(tree_[0].LeafIndex(x, r))[1];
  }
  return out;
}

// Logistic regression

void LogisticRegression::Fit(const Matrix& x, const std::vector<int>& labels) {
  CheckBinary(x, labels);
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  Matrix design(n, p + 1);
  design.leftCols(p) = x;
  design.col(p).setOnes();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = labels[static_cast<size_t>(i)];
  Eigen::VectorXd penalty = Eigen::VectorXd::Ones(p + 1);
  penalty(p) = 0.0;

  auto objective = [&](const Eigen::VectorXd& beta) {
    const Eigen::VectorXd z = design * beta;
    double loss = 0;
    for (Eigen::Index i = 0; i < n; ++i) loss += Softplus(z(i)) - y(i) * z(i);
    return c_ * loss + 0.5 * beta.cwiseProduct(penalty).dot(beta);
  };

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p + 1);
  double current = objective(beta);
  iterations_ = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const Eigen::VectorXd z = design * beta;
    Eigen::VectorXd prob(n), curvature(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      prob(i) = Sigmoid(z(i));
      curvature(i) = c_ * prob(i) * (1.0 - prob(i));
    }
    const Eigen::VectorXd grad =
        c_ * design.transpose() * (prob - y) + penalty.cwiseProduct(beta);
    Matrix hessian = design.transpose() * curvature.asDiagonal() * design;
    hessian.diagonal() += penalty;
    // Keeps the intercept direction solvable when curvature vanishes.
    hessian(p, p) += 1e-12;
    const Eigen::VectorXd step = hessian.ldlt().solve(grad);
    ++iterations_;

    double scale = 1.0;
    Eigen::VectorXd next = beta - step;
    double value = objective(next);
    while (value > current && scale > 1e-10) {
      scale *= 0.5;
      next = beta - scale * step;
      value = objective(next);
    }
    const double moved = (next - beta).lpNorm<Eigen::Infinity>();
    beta = next;
    current = value;
    if (moved < 1e-10 || grad.lpNorm<Eigen::Infinity>() < 1e-10) break;
  }
  w_ = beta.head(p);
  b_ = beta(p);
}

Eigen::VectorXd LogisticRegression::PredictProba(const Matrix& x) const {
  if (w_.size() != x.cols()) throw std::logic_error("logistic: not fitted");
  Eigen::VectorXd z = (x * w_).array() + b_;
  return z.unaryExpr([](double v) { return Sigmoid(v); });
}

// Gradient boosting

void GradientBoosting::Fit(const Matrix& x, const std::vector<int>& labels) {
  CheckBinary(x, labels);
  const Eigen::Index n = x.rows();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = labels[static_cast<size_t>(i)];
  const double prior = y.mean();
  init_ = std::log(prior / (1.0 - prior));

  TreeOptions tree_options;
  tree_options.max_depth = options_.max_depth;
  Rng rng(seed_);
  Eigen::VectorXd f = Eigen::VectorXd::Constant(n, init_);
  trees_.clear();
  std::vector<int> leaf_of(static_cast<size_t>(n));
  for (int round = 0; round < options_.rounds; ++round) {
    Eigen::VectorXd prob = f.unaryExpr([](double v) { return Sigmoid(v); });
    const Eigen::VectorXd residual = y - prob;
    DecisionTree tree = DecisionTree::FitRegressor(x, residual, tree_options, rng);

    std::vector<double> num(static_cast<size_t>(tree.NumNodes()), 0.0);
    std::vector<double> den(static_cast<size_t>(tree.NumNodes()), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int leaf = tree.LeafIndex(x, i);
      leaf_of[static_cast<size_t>(i)] = leaf;
      num[static_cast<size_t>(leaf)] += residual(i);
      den[static_cast<size_t>(leaf)] += prob(i) * (1.0 - prob(i));
    }
    for (int node = 0; node < tree.NumNodes(); ++node) {
      if (den[static_cast<size_t>(node)] == 0 && num[static_cast<size_t>(node)] == 0) {
        continue;  // internal node or empty leaf
      }
      const double d = den[static_cast<size_t>(node)];
      const double value = std::abs(d) < 1e-150 ? 0.0 : num[static_cast<size_t>(node)] / d;
      tree.SetLeafValue(node, std::span<const double>(&value, 1));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      f(i) += options_.learning_rate * tree.LeafValue(leaf_of[static_cast<size_t>(i)])[0];
    }
    trees_.push_back(std::move(tree));
  }
}

Eigen::VectorXd GradientBoosting::DecisionFunction(const Matrix& x) const {
  if (trees_.empty()) throw std::logic_error("gradient boosting: not fitted");
  Eigen::VectorXd f = Eigen::VectorXd::Constant(x.rows(), init_);
  for (const DecisionTree& tree : trees_) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      f(r) += options_.learning_rate * tree.LeafValue(tree.LeafIndex(x, r))[0];
    }
  }
  return f;
}

Eigen::VectorXd GradientBoosting::PredictProba(const Matrix& x) const {
  return DecisionFunction(x).unaryExpr([](double v) { return Sigmoid(v); });
}

// Nearest neighbours

void NearestNeighbors::Fit(const Matrix& x, const std::vector<int>& labels) {
  CheckBinary(x, labels);
  if (k_ < 1) throw std::invalid_argument("knn: k must be >= 1");
  x_ = x;
  labels_ = labels;
}

Eigen::VectorXd NearestNeighbors::PredictProba(const Matrix& x) const {
  if (labels_.empty()) throw std::logic_error("knn: not fitted");
  if (x.cols() != x_.cols()) throw std::invalid_argument("knn: width mismatch");
  const auto k = static_cast<size_t>(std::min<Eigen::Index>(k_, x_.rows()));
  Eigen::VectorXd out(x.rows());
  std::vector<std::pair<double, size_t>> dist(static_cast<size_t>(x_.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index j = 0; j < x_.rows(); ++j) {
      dist[static_cast<size_t>(j)] = {(x_.row(j) - x.row(r)).squaredNorm(),
                                      static_cast<size_t>(j)};
    }
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     dist.end());
    std::sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k));
    int positives = 0;
    for (size_t i = 0; i < k; ++i) positives += labels_[dist[i].second];
    out(r) = static_cast<double>(positives) / static_cast<double>(k);
  }
  return out;
}

std::unique_ptr<Classifier> MakeClassifier(ClassifierKind kind, uint64_t seed) {
  switch (kind) {
    case ClassifierKind::kRandomForest:
      return std::make_unique<RandomForest>(ForestOptions{}, seed);
    case ClassifierKind::kLogistic:
      return std::make_unique<LogisticRegression>(10.0);
    case ClassifierKind::kGradientBoosting:
      return std::make_unique<GradientBoosting>(BoostingOptions{}, seed);
    case ClassifierKind::kKnn:
      return std::make_unique<NearestNeighbors>(5);
    case ClassifierKind::kDecisionTree:
      return std::make_unique<TreeClassifier>(seed);
  }
  throw std::invalid_argument("unknown classifier kind");
}

Eigen::VectorXd FitPredict(ClassifierKind kind, const Matrix& train_x,
                           const std::vector<int>& train_labels,
                           const Matrix& test_x, uint64_t seed) {
  auto model = MakeClassifier(kind, seed);
  model->Fit(train_x, train_labels);
  return model->PredictProba(test_x);
}

}  // namespace imbal::eval
