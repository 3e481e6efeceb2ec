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


#ifndef IMBAL_EVAL_METRICS_H_
#define IMBAL_EVAL_METRICS_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "imbal/common/random.h"

namespace imbal::eval {

enum class MetricKind { kAucRoc, kAucPr, kBrier };

inline constexpr std::array<MetricKind, 3> kAllMetrics = {
    MetricKind::kAucRoc, MetricKind::kAucPr, MetricKind::kBrier};

std::string MetricName(MetricKind kind);
MetricKind ParseMetric(std::string_view name);
// AUC metrics are maximised, the Brier score is minimised.
bool HigherIsBetter(MetricKind kind);

// Probability that a random positive outscores a random negative, ties
// counting one half. Throws unless both classes are present.
double AucRoc(const Eigen::VectorXd& scores, const std::vector<int>& labels);

// Step-wise area under the precision-recall curve: sum over descending
// distinct thresholds of (recall gain) * precision. Throws without positives.
double AucPr(const Eigen::VectorXd& scores, const std::vector<int>& labels);

// Mean squared difference between score and 0/1 label.
double Brier(const Eigen::VectorXd& scores, const std::vector<int>& labels);

double Metric(MetricKind kind, const Eigen::VectorXd& scores,
              const std::vector<int>& labels);

struct BootstrapResult {
  std::vector<double> auc_roc;
  std::vector<double> auc_pr;
  std::vector<double> brier;
  int redraws = 0;  // resamples rejected for missing a class

  const std::vector<double>& Values(MetricKind kind) const;
};

// Resamples (score, label) pairs n-out-of-n with replacement `resamples`
// times and evaluates every metric on each resample. Resamples lacking a
// class are drawn again.
BootstrapResult BootstrapMetrics(const Eigen::VectorXd& scores,
                                 const std::vector<int>& labels, int resamples,
                                 Rng& rng);

// One evaluation result for a (dataset, seed, method, classifier) cell.
struct MetricRecord {
  std::string dataset;
  uint64_t seed = 0;
  std::string method;
  std::string classifier;
  MetricKind metric = MetricKind::kAucRoc;
  double value = 0;               // on the full test set
  std::vector<double> bootstrap;  // one value per resample

  double BootstrapMean() const;
};

}  // namespace imbal::eval

#endif  // IMBAL_EVAL_METRICS_H_
