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


#ifndef IMBAL_EVAL_CLASSIFIERS_H_
#define IMBAL_EVAL_CLASSIFIERS_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "imbal/eval/tree.h"

namespace imbal::eval {

enum class ClassifierKind {
  kRandomForest,
  kLogistic,
  kGradientBoosting,
  kKnn,
  kDecisionTree,
};

inline constexpr std::array<ClassifierKind, 5> kAllClassifiers = {
    ClassifierKind::kRandomForest, ClassifierKind::kLogistic,
    ClassifierKind::kGradientBoosting, ClassifierKind::kKnn,
    ClassifierKind::kDecisionTree};

std::string ClassifierName(ClassifierKind kind);
ClassifierKind ParseClassifier(std::string_view name);

// Binary probabilistic classifier. Labels are 0/1 with 1 the minority class;
// PredictProba returns P(label = 1) per row.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void Fit(const Matrix& x, const std::vector<int>& labels) = 0;
  virtual Eigen::VectorXd PredictProba(const Matrix& x) const = 0;
};

struct ForestOptions {
  int trees = 300;
  int max_features = 0;  // 0: floor(sqrt(p)), at least 1
  bool bootstrap = true;
  int max_depth = 0;
};

// Bagged Gini trees; also used for multi-class targets.
class RandomForest final : public Classifier {
 public:
  RandomForest(ForestOptions options, uint64_t seed)
      : options_(options), seed_(seed) {}

  void Fit(const Matrix& x, const std::vector<int>& labels) override;
  void FitMulticlass(const Matrix& x, const std::vector<int>& labels,
                     int num_classes);
  Eigen::VectorXd PredictProba(const Matrix& x) const override;
  // n x num_classes mean leaf distributions.
  Matrix PredictClassProba(const Matrix& x) const;
  // Most probable class; ties go to the lower index.
  std::vector<int> Predict(const Matrix& x) const;

 private:
  ForestOptions options_;
  uint64_t seed_;
  int classes_ = 2;
  std::vector<DecisionTree> trees_;
};

// Unpruned Gini tree over all features.
class TreeClassifier final : public Classifier {
 public:
  explicit TreeClassifier(uint64_t seed) : seed_(seed) {}
  void Fit(const Matrix& x, const std::vector<int>& labels) override;
  Eigen::VectorXd PredictProba(const Matrix& x) const override;

 private:
  uint64_t seed_;
  std::vector<DecisionTree> tree_;  // empty until fitted
};

// L2-penalised logistic regression fitted by Newton's method. The loss is
// C * sum(log-loss) + 0.5 * |w|^2 with an unpenalised intercept.
class LogisticRegression final : public Classifier {
 public:
  explicit LogisticRegression(double inverse_penalty = 10.0)
      : c_(inverse_penalty) {}
  void Fit(const Matrix& x, const std::vector<int>& labels) override;
  Eigen::VectorXd PredictProba(const Matrix& x) const override;

  const Eigen::VectorXd& coefficients() const { return w_; }
  double intercept() const { return b_; }
  int iterations() const { return iterations_; }

 private:
  double c_;
  Eigen::VectorXd w_;
  double b_ = 0;
  int iterations_ = 0;
};

struct BoostingOptions {
  int rounds = 100;
  double learning_rate = 0.1;
  int max_depth = 3;
};

// Gradient boosting on the binomial deviance with squared-error regression
// trees and one Newton step per leaf, starting from the prior log-odds.
class GradientBoosting final : public Classifier {
 public:
  GradientBoosting(BoostingOptions options, uint64_t seed)
      : options_(options), seed_(seed) {}
  void Fit(const Matrix& x, const std::vector<int>& labels) override;
  Eigen::VectorXd PredictProba(const Matrix& x) const override;
  Eigen::VectorXd DecisionFunction(const Matrix& x) const;

 private:
  BoostingOptions options_;
  uint64_t seed_;
  double init_ = 0;
  std::vector<DecisionTree> trees_;
};

// Fraction of the k nearest training rows (Euclidean) that are positive.
// Equal distances are broken by training row order.
class NearestNeighbors final : public Classifier {
 public:
  explicit NearestNeighbors(int k = 5) : k_(k) {}
  void Fit(const Matrix& x, const std::vector<int>& labels) override;
  Eigen::VectorXd PredictProba(const Matrix& x) const override;

 private:
  int k_;
  Matrix x_;
  std::vector<int> labels_;
};

// Fixed-hyperparameter instance of `kind`, seeded for reproducibility.
std::unique_ptr<Classifier> MakeClassifier(ClassifierKind kind, uint64_t seed);

// Fits on the training rows and scores the test rows. Throws on
// single-class training data.
Eigen::VectorXd FitPredict(ClassifierKind kind, const Matrix& train_x,
                           const std::vector<int>& train_labels,
                           const Matrix& test_x, uint64_t seed);

}  // namespace imbal::eval

#endif  // IMBAL_EVAL_CLASSIFIERS_H_
