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


#include "imbal/eval/metrics.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace imbal::eval {
namespace {

void CheckSizes(const Eigen::VectorXd& scores, const std::vector<int>& labels) {
  if (static_cast<size_t>(scores.size()) != labels.size()) {
    throw std::invalid_argument("metric: score and label counts differ");
  }
}

// Row order sorted by descending score; equal scores keep index order.
std::vector<size_t> DescendingOrder(const Eigen::VectorXd& scores) {
  std::vector<size_t> order(static_cast<size_t>(scores.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores(static_cast<Eigen::Index>(a)) > scores(static_cast<Eigen::Index>(b));
  });
  return order;
}

}  // namespace

std::string MetricName(MetricKind kind) {
  switch (kind) {
    case MetricKind::kAucRoc: return "auc_roc";
    case MetricKind::kAucPr: return "auc_pr";
    case MetricKind::kBrier: return "brier";
  }
  throw std::invalid_argument("unknown metric kind");
}

MetricKind ParseMetric(std::string_view name) {
  for (MetricKind kind : kAllMetrics) {
    if (MetricName(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

bool HigherIsBetter(MetricKind kind) { return kind != MetricKind::kBrier; }

double AucRoc(const Eigen::VectorXd& scores, const std::vector<int>& labels) {
  CheckSizes(scores, labels);
  const size_t n = labels.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores(static_cast<Eigen::Index>(a)) < scores(static_cast<Eigen::Index>(b));
  });
  // Mann-Whitney U from average ranks; tied groups share their mean rank.
  double positive_rank_sum = 0;
  double positives = 0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    const double v = scores(static_cast<Eigen::Index>(order[i]));
    while (j < n && scores(static_cast<Eigen::Index>(order[j])) == v) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1..j
    for (size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        positive_rank_sum += rank;
        positives += 1;
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(n) - positives;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("auc_roc: both classes are required");
  }
  const double u = positive_rank_sum - positives * (positives + 1) / 2.0;
  return u / (positives * negatives);
}

double AucPr(const Eigen::VectorXd& scores, const std::vector<int>& labels) {
  CheckSizes(scores, labels);
  const double total_pos = std::count(labels.begin(), labels.end(), 1);
  if (total_pos == 0) throw std::invalid_argument("auc_pr: no positive labels");
  const std::vector<size_t> order = DescendingOrder(scores);
  double tp = 0, fp = 0, area = 0, last_recall = 0;
  size_t i = 0;
  while (i < order.size()) {
    const double v = scores(static_cast<Eigen::Index>(order[i]));
    while (i < order.size() && scores(static_cast<Eigen::Index>(order[i])) == v) {
      (labels[order[i]] == 1 ? tp : fp) += 1;
      ++i;
    }
    const double recall = tp / total_pos;
    area += (recall - last_recall) * (tp / (tp + fp));
    last_recall = recall;
  }
  return area;
}

double Brier(const Eigen::VectorXd& scores, const std::vector<int>& labels) {
  CheckSizes(scores, labels);
  if (labels.empty()) throw std::invalid_argument("brier: empty input");
  double total = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    const double d = scores(static_cast<Eigen::Index>(i)) - labels[i];
    total += d * d;
  }
  return total / static_cast<double>(labels.size());
}

double Metric(MetricKind kind, const Eigen::VectorXd& scores,
              const std::vector<int>& labels) {
  switch (kind) {
    case MetricKind::kAucRoc: return AucRoc(scores, labels);
    case MetricKind::kAucPr: return AucPr(scores, labels);
    case MetricKind::kBrier: return Brier(scores, labels);
  }
  throw std::invalid_argument("unknown metric kind");
}

const std::vector<double>& BootstrapResult::Values(MetricKind kind) const {
  switch (kind) {
    case MetricKind::kAucRoc: return auc_roc;
    case MetricKind::kAucPr: return auc_pr;
    case MetricKind::kBrier: return brier;
  }
  throw std::invalid_argument("unknown metric kind");
}

BootstrapResult BootstrapMetrics(const Eigen::VectorXd& scores,
                                 const std::vector<int>& labels, int resamples,
                                 Rng& rng) {
  CheckSizes(scores, labels);
  const size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("bootstrap: empty test set");
  const auto pos = static_cast<size_t>(std::count(labels.begin(), labels.end(), 1));
  if (pos == 0 || pos == n) {
    throw std::invalid_argument("bootstrap: test set needs both classes");
  }
  BootstrapResult out;
  Eigen::VectorXd s(static_cast<Eigen::Index>(n));
  std::vector<int> y(n);
  for (int b = 0; b < resamples;) {
    int drawn_pos = 0;
    for (size_t i = 0; i < n; ++i) {
      const size_t pick = rng.Index(n);
      s(static_cast<Eigen::Index>(i)) = scores(static_cast<Eigen::Index>(pick));
      y[i] = labels[pick];
      drawn_pos += y[i];
    }
    if (drawn_pos == 0 || drawn_pos == static_cast<int>(n)) {
      ++out.redraws;
      continue;
    }
    out.auc_roc.push_back(AucRoc(s, y));
    out.auc_pr.push_back(AucPr(s, y));
    out.brier.push_back(Brier(s, y));
    ++b;
  }
  return out;
}

double MetricRecord::BootstrapMean() const {
  if (bootstrap.empty()) return value;
  return std::accumulate(bootstrap.begin(), bootstrap.end(), 0.0) /
         static_cast<double>(bootstrap.size());
}

}  // namespace imbal::eval
