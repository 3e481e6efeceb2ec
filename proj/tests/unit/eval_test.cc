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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <doctest.h>

#include "imbal/eval/classifiers.h"
#include "imbal/eval/metrics.h"
#include "imbal/eval/splits.h"
#include "imbal/eval/tree.h"
#include "oracles.h"

namespace imbal::eval {
namespace {

Eigen::VectorXd Vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

using testing::PairwiseAuc;
using testing::ThresholdAucPr;

struct Sample {
  Eigen::VectorXd scores;
  std::vector<int> labels;
};

// Scores rounded to two decimals so ties are frequent.
Sample RandomSample(Rng& rng, size_t n) {
  Sample out{Eigen::VectorXd(static_cast<Eigen::Index>(n)), std::vector<int>(n)};
  for (size_t i = 0; i < n; ++i) {
    out.labels[i] = rng.Bernoulli(0.3) ? 1 : 0;
    out.scores(static_cast<Eigen::Index>(i)) =
        std::round(rng.Uniform() * 100 + 15 * out.labels[i]) / 100;
  }
  out.labels[0] = 1;
  out.labels[1] = 0;
  return out;
}

// Fixed 24 x 3 training set and 6 query rows; frozen reference outputs
// below were produced offline by scikit-learn on the same numbers.
Matrix FixtureX() {
  const double v[24][3] = {
      {0.001, 0.299, -0.274},  {-0.891, -0.455, -0.992}, {0.06, 1.34, -0.492},
      {-0.62, 0.49, 0.357},    {0.105, -0.93, -0.029},   {0.695, -1.344, -0.458},
      {-1.901, -1.29, -1.842}, {-0.235, -1.267, 0.271},  {0.157, -0.187, -2.517},
      {-0.539, -0.049, 0.113}, {-1.53, -0.478, -0.979},  {-0.809, 1.061, -0.808},
      {-0.033, 0.884, -0.584}, {-0.112, 0.11, 0.064},    {-1.225, 0.076, 1.359},
      {-1.547, 0.859, 0.119},  {-0.641, 2.0, 0.762},     {-1.199, 0.075, 0.577},
      {-0.189, 0.683, -0.067}, {0.667, 1.439, -0.676},   {0.203, -0.463, 0.127},
      {-1.187, -0.579, -0.196}, {0.899, 1.145, -1.324},  {-0.795, 0.647, -1.992}};
  Matrix x(24, 3);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = v[i][j];
  return x;
}

std::vector<int> FixtureY() {
  return {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0};
}

Matrix FixtureQuery() {
  const double v[6][3] = {{-1.291, 0.347, -1.688}, {-2.035, -0.304, -0.9},
                          {0.164, 2.245, -0.832},  {-0.624, 0.205, 0.493},
                          {-0.176, -0.206, 0.702}, {0.52, -1.034, -0.079}};
  Matrix x(6, 3);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = v[i][j];
  return x;
}

// Two Gaussian blobs in p dimensions, 25% positives.
void Blobs(size_t n, int p, double gap, uint64_t seed, Matrix& x,
           std::vector<int>& y) {
  Rng rng(seed);
  x.resize(static_cast<Eigen::Index>(n), p);
  y.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    y[i] = rng.Bernoulli(0.25) ? 1 : 0;
    for (int j = 0; j < p; ++j) {
      x(static_cast<Eigen::Index>(i), j) = rng.Normal(y[i] * gap, 1.0);
    }
  }
}

}  // namespace

TEST_CASE("auc_roc worked examples") {
  CHECK(AucRoc(Vec({0.1, 0.2, 0.8, 0.9}), {0, 0, 1, 1}) == 1.0);
  CHECK(AucRoc(Vec({0.9, 0.8, 0.2, 0.1}), {0, 0, 1, 1}) == 0.0);
  CHECK(AucRoc(Vec({0.1, 0.4, 0.35, 0.8}), {0, 0, 1, 1}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(AucRoc(Vec({0.5, 0.5, 0.5}), {0, 1, 0}) == 0.5);
  CHECK_THROWS_AS(AucRoc(Vec({0.1, 0.2}), {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(AucRoc(Vec({0.1, 0.2}), {1}), std::invalid_argument);
}

TEST_CASE("auc_roc equals the exhaustive pairwise count") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Sample s = RandomSample(rng, 2 + rng.Index(199));
    CHECK(AucRoc(s.scores, s.labels) == doctest::Approx(PairwiseAuc(s.scores, s.labels)).epsilon(1e-12));
  }
}

TEST_CASE("auc_roc of negated scores is the complement") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Sample s = RandomSample(rng, 40);
    const Eigen::VectorXd negated = -s.scores;
    CHECK(AucRoc(s.scores, s.labels) + AucRoc(negated, s.labels) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("auc_pr worked examples") {
  // Matches scikit-learn average_precision_score on the same input.
  CHECK(AucPr(Vec({0.1, 0.4, 0.35, 0.8}), {0, 0, 1, 1}) == doctest::Approx(0.8333333333333333).epsilon(1e-15));
  CHECK(AucPr(Vec({0.3, 0.3, 0.3, 0.3}), {0, 1, 0, 0}) == doctest::Approx(0.25));
  CHECK(AucPr(Vec({0.9, 0.1}), {1, 0}) == 1.0);
  CHECK_THROWS_AS(AucPr(Vec({0.1, 0.2}), {0, 0}), std::invalid_argument);
}

TEST_CASE("auc_pr matches threshold enumeration") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Sample s = RandomSample(rng, 2 + rng.Index(199));
    const double got = AucPr(s.scores, s.labels);
    CHECK(got == doctest::Approx(ThresholdAucPr(s.scores, s.labels)).epsilon(1e-12));
    CHECK(got >= 0.0);
    CHECK(got <= 1.0);
  }
}

TEST_CASE("brier score") {
  CHECK(Brier(Vec({0.9, 0.2, 0.6, 0.1}), {1, 0, 1, 0}) == doctest::Approx(0.055));
  CHECK(Brier(Vec({0.5, 0.5}), {1, 0}) == doctest::Approx(0.25));
  CHECK(Brier(Vec({1.0, 0.0}), {1, 0}) == 0.0);
  Rng rng(14);
  const Sample s = RandomSample(rng, 60);
  std::vector<int> flipped(s.labels);
  for (int& v : flipped) v = 1 - v;
  const Eigen::VectorXd complement = Eigen::VectorXd::Ones(s.scores.size()) - s.scores;
  CHECK(Brier(s.scores, s.labels) == doctest::Approx(Brier(complement, flipped)).epsilon(1e-12));
}

TEST_CASE("metric names round-trip") {
  for (MetricKind k : kAllMetrics) CHECK(ParseMetric(MetricName(k)) == k);
  CHECK_THROWS_AS(ParseMetric("f1"), std::invalid_argument);
  CHECK(HigherIsBetter(MetricKind::kAucRoc));
  CHECK_FALSE(HigherIsBetter(MetricKind::kBrier));
}

TEST_CASE("bootstrap resampling") {
  Rng data_rng(15);
  const Sample s = RandomSample(data_rng, 80);
  Rng a(99), b(99);
  const BootstrapResult r1 = BootstrapMetrics(s.scores, s.labels, 100, a);
  const BootstrapResult r2 = BootstrapMetrics(s.scores, s.labels, 100, b);
  for (MetricKind k : kAllMetrics) {
    REQUIRE(r1.Values(k).size() == 100);
    CHECK(r1.Values(k) == r2.Values(k));
    const std::vector<double>& v = r1.Values(k);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / 100.0;
    double var = 0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / 99.0);
    // The bootstrap distribution centres near the full-sample value.
    CHECK(std::abs(mean - Metric(k, s.scores, s.labels)) < 3 * sd);
  }
  CHECK_THROWS_AS(BootstrapMetrics(s.scores, std::vector<int>(80, 0), 10, a), std::invalid_argument);
}

TEST_CASE("bootstrap redraws single-class resamples") {
  // With one positive among three rows a resample misses it with
  // probability (2/3)^3, so redraws occur in 200 resamples.
  Rng rng(16);
  const BootstrapResult r = BootstrapMetrics(Vec({0.2, 0.7, 0.4}), {0, 1, 0}, 200, rng);
  CHECK(r.auc_roc.size() == 200);
  CHECK(r.redraws > 0);
  for (double v : r.auc_roc) CHECK(v == 1.0);
}

TEST_CASE("regression tree stump splits at the midpoint") {
  Matrix x(4, 1);
  x << 1, 2, 3, 4;
  Rng rng(1);
  TreeOptions options;
  options.max_depth = 1;
  const DecisionTree t = DecisionTree::FitRegressor(x, Vec({0, 0, 1, 1}), options, rng);
  CHECK(t.NumLeaves() == 2);
  CHECK(t.Depth() == 1);
  Matrix q(2, 1);
  q << 2.5, 2.5000001;
  CHECK(t.LeafValue(t.LeafIndex(q, 0))[0] == 0.0);
  CHECK(t.LeafValue(t.LeafIndex(q, 1))[0] == 1.0);
}

TEST_CASE("unpruned tree reproduces distinct training rows") {
  Matrix x;
  std::vector<int> y;
  Blobs(150, 4, 0.7, 21, x, y);
  TreeClassifier tree(3);
  tree.Fit(x, y);
  const Eigen::VectorXd p = tree.PredictProba(x);
  for (size_t i = 0; i < y.size(); ++i) CHECK(p(static_cast<Eigen::Index>(i)) == y[i]);
}

TEST_CASE("tree weights act as row multiplicities") {
  Matrix x;
  std::vector<int> y;
  Blobs(60, 2, 1.0, 22, x, y);
  std::vector<double> w(60, 0.0);
  Matrix dup(0, 2);
  std::vector<int> dup_y;
  for (int i = 0; i < 60; ++i) {
    const int copies = i % 3;
    w[static_cast<size_t>(i)] = copies;
    for (int c = 0; c < copies; ++c) {
      dup.conservativeResize(dup.rows() + 1, 2);
      dup.row(dup.rows() - 1) = x.row(i);
      dup_y.push_back(y[static_cast<size_t>(i)]);
    }
  }
  TreeOptions options;
  options.max_depth = 3;
  Rng r1(5), r2(5);
  const DecisionTree weighted = DecisionTree::FitClassifier(x, y, 2, w, options, r1);
  const DecisionTree expanded = DecisionTree::FitClassifier(dup, dup_y, 2, {}, options, r2);
  CHECK(weighted.NumNodes() == expanded.NumNodes());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const auto a = weighted.LeafValue(weighted.LeafIndex(x, i));
    const auto b = expanded.LeafValue(expanded.LeafIndex(x, i));
    CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-12));
  }
}

TEST_CASE("logistic regression matches the reference fit") {
  LogisticRegression lr(10.0);
  lr.Fit(FixtureX(), FixtureY());
  const Eigen::VectorXd ref_w = Vec({2.40103360684938, 3.878572982868473, 0.216197417260402});
  for (Eigen::Index j = 0; j < 3; ++j) CHECK(lr.coefficients()(j) == doctest::Approx(ref_w(j)).epsilon(1e-6));
  CHECK(lr.intercept() == doctest::Approx(-4.299001023435922).epsilon(1e-6));
  const Eigen::VectorXd p = lr.PredictProba(FixtureQuery());
  const Eigen::VectorXd ref_p = Vec({0.0016295641078057472, 2.5964139027626228e-05, 0.9902654206734033,
                                     0.007424238626998609, 0.0046381147925312356, 0.0008427579913429453});
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(p(i) == doctest::Approx(ref_p(i)).epsilon(1e-6));
}

TEST_CASE("logistic regression satisfies its optimality condition") {
  Matrix x;
  std::vector<int> y;
  Blobs(300, 5, 0.8, 23, x, y);
  const double c = 10.0;
  LogisticRegression lr(c);
  lr.Fit(x, y);
  const Eigen::VectorXd p = lr.PredictProba(x);
  Eigen::VectorXd residual(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) residual(i) = p(i) - y[static_cast<size_t>(i)];
  const Eigen::VectorXd grad_w = c * x.transpose() * residual + lr.coefficients();
  CHECK(grad_w.cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(residual.sum()) < 1e-6);
}

TEST_CASE("gradient boosting matches the reference fit") {
  GradientBoosting gb(BoostingOptions{}, 0);
  gb.Fit(FixtureX(), FixtureY());
  const Eigen::VectorXd p = gb.PredictProba(FixtureQuery());
  const double low = 7.496619955970934e-06;
  const Eigen::VectorXd ref_p = Vec({low, low, 0.9999657113557268, low, low, low});
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(p(i) == doctest::Approx(ref_p(i)).epsilon(1e-6));
}

TEST_CASE("nearest neighbours matches the reference fit") {
  NearestNeighbors knn(5);
  knn.Fit(FixtureX(), FixtureY());
  const Eigen::VectorXd p = knn.PredictProba(FixtureQuery());
  const Eigen::VectorXd ref_p = Vec({0, 0, 0.6, 0, 0, 0});
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(p(i) == doctest::Approx(ref_p(i)));
}

TEST_CASE("every classifier scores probabilities and is reproducible") {
  Matrix x, q;
  std::vector<int> y, qy;
  Blobs(240, 4, 2.0, 24, x, y);
  Blobs(120, 4, 2.0, 25, q, qy);
  for (ClassifierKind kind : kAllClassifiers) {
    CAPTURE(ClassifierName(kind));
    CHECK(ParseClassifier(ClassifierName(kind)) == kind);
    const Eigen::VectorXd p1 = FitPredict(kind, x, y, q, 7);
    const Eigen::VectorXd p2 = FitPredict(kind, x, y, q, 7);
    REQUIRE(p1.size() == q.rows());
    CHECK(p1 == p2);
    CHECK(p1.minCoeff() >= 0.0);
    CHECK(p1.maxCoeff() <= 1.0);
    // Separation of two units per dimension is easy for every model.
    CHECK(AucRoc(p1, qy) > 0.9);
    CHECK_THROWS_AS(FitPredict(kind, x, std::vector<int>(y.size(), 0), q, 7), std::invalid_argument);
  }
  const Eigen::VectorXd knn = FitPredict(ClassifierKind::kKnn, x, y, q, 1);
  for (Eigen::Index i = 0; i < knn.size(); ++i) {
    CHECK(std::abs(knn(i) * 5 - std::round(knn(i) * 5)) < 1e-12);
  }
  CHECK_THROWS_AS(ParseClassifier("svm"), std::invalid_argument);
}

TEST_CASE("random forest seeds change the ensemble") {
  Matrix x, q;
  std::vector<int> y, qy;
  Blobs(200, 4, 0.6, 26, x, y);
  Blobs(50, 4, 0.6, 27, q, qy);
  RandomForest a(ForestOptions{.trees = 40}, 1), b(ForestOptions{.trees = 40}, 2);
  a.Fit(x, y);
  b.Fit(x, y);
  CHECK(a.PredictProba(q) != b.PredictProba(q));
}

TEST_CASE("random forest multi-class rows sum to one") {
  Rng rng(28);
  Matrix x(300, 2);
  std::vector<int> y(300);
  for (int i = 0; i < 300; ++i) {
    y[static_cast<size_t>(i)] = i % 3;
    x(i, 0) = rng.Normal(3.0 * (i % 3), 1.0);
    x(i, 1) = rng.Normal(0, 1.0);
  }
  RandomForest rf(ForestOptions{.trees = 30}, 3);
  rf.FitMulticlass(x, y, 3);
  const Matrix p = rf.PredictClassProba(x);
  REQUIRE(p.cols() == 3);
  for (Eigen::Index i = 0; i < p.rows(); ++i) CHECK(p.row(i).sum() == doctest::Approx(1.0));
  const std::vector<int> pred = rf.Predict(x);
  int correct = 0;
  for (size_t i = 0; i < y.size(); ++i) correct += pred[i] == y[i];
  CHECK(correct > 270);
}

TEST_CASE("stratified split keeps class shares and partitions the rows") {
  std::vector<int> y(1000, 0);
  std::fill(y.begin(), y.begin() + 300, 1);
  const TrainTestSplit s = StratifiedSplit(y, 0.1, 42);
  CHECK(s.test.size() == 100);
  CHECK(s.train.size() == 900);
  CHECK(std::count_if(s.test.begin(), s.test.end(), [&](size_t i) { return y[i] == 1; }) == 30);
  std::vector<size_t> all(s.train);
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
  CHECK(StratifiedSplit(y, 0.1, 42).test == s.test);
  CHECK(StratifiedSplit(y, 0.1, 43).test != s.test);
  // A tiny class still contributes a test row and keeps a training row.
  const TrainTestSplit tiny = StratifiedSplit({0, 0, 0, 0, 0, 0, 0, 0, 1, 1}, 0.1, 1);
  CHECK(std::count_if(tiny.test.begin(), tiny.test.end(), [](size_t i) { return i >= 8; }) == 1);
  CHECK_THROWS_AS(StratifiedSplit(y, 1.0, 1), std::invalid_argument);
}

TEST_CASE("stratified folds cover every row once with balanced classes") {
  std::vector<int> y(100, 0);
  std::fill(y.begin(), y.begin() + 31, 1);
  const auto folds = StratifiedFolds(y, 3, 9);
  REQUIRE(folds.size() == 3);
  std::vector<int> seen(100, 0);
  for (const auto& f : folds) {
    const auto pos = std::count_if(f.begin(), f.end(), [&](size_t i) { return y[i] == 1; });
    CHECK(pos >= 10);
    CHECK(pos <= 11);
    CHECK(f.size() >= 33);
    CHECK(f.size() <= 34);
    for (size_t i : f) ++seen[i];
    const std::vector<size_t> rest = Complement(f, 100);
    CHECK(rest.size() + f.size() == 100);
    for (size_t i : rest) CHECK_FALSE(std::binary_search(f.begin(), f.end(), i));
  }
  for (int v : seen) CHECK(v == 1);
  CHECK_THROWS_AS(StratifiedFolds({0, 0, 0, 1, 1}, 3, 1), std::invalid_argument);
}

}  // namespace imbal::eval
