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


#ifndef IMBAL_STATS_TABLES_H_
#define IMBAL_STATS_TABLES_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "imbal/stats/friedman.h"
#include "imbal/stats/ranking.h"
#include "json.hpp"

namespace imbal::stats {

// One aggregated score: a method's result for a (dataset, classifier,
// metric) block, usually already averaged over seeds.
struct ScoreCell {
  std::string dataset;
  std::string classifier;
  std::string metric;
  std::string method;
  double score = 0;
  bool higher_is_better = true;
};

// How a block without a smote_nc score (no categorical columns) is filled.
enum class SmoteNcFill {
  kLeaveGap,
  kCopyScore,    // smote_nc takes smote's score and joins the ranking as a tie
  // Display ranks: rank the others, then smote_nc takes smote's rank.
  // Friedman ranks treat this like kCopyScore so each row stays a ranking.
  kInheritRank,
};

struct TableOptions {
  TiePolicy display_policy = TiePolicy::kCompetition;
  TiePolicy friedman_policy = TiePolicy::kAverage;
  bool tie_correction = false;
  SmoteNcFill smote_nc_fill = SmoteNcFill::kInheritRank;
};

struct BlockKey {
  std::string dataset;
  std::string classifier;
  std::string metric;
  auto operator<=>(const BlockKey&) const = default;
};

struct FriedmanRow {
  std::string classifier;
  std::string metric;
  std::vector<std::string> datasets;  // complete blocks that entered the test
  std::optional<FriedmanResult> result;  // empty with fewer than two blocks
};

// Mean-rank tables over a block grid. Rank vectors follow `methods`; NaN
// marks a gap. Means skip gaps and are NaN when nothing is left.
struct RankTables {
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::string> classifiers;
  std::vector<std::string> metrics;
  std::map<BlockKey, std::vector<double>> display_ranks;
  std::map<BlockKey, std::vector<double>> friedman_ranks;
  std::map<std::pair<std::string, std::string>, std::vector<double>> by_dataset_classifier;
  std::map<std::string, std::vector<double>> by_dataset;
  std::map<std::pair<std::string, std::string>, std::vector<double>> by_classifier_metric;
  std::map<std::string, std::vector<double>> by_classifier;
  std::map<std::string, std::vector<double>> by_metric;
  std::vector<double> overall;
  std::vector<FriedmanRow> friedman;
  std::vector<std::string> gaps;  // "dataset/classifier/metric/method"

  // Method names sorted by overall mean rank, ties in method order.
  std::vector<std::string> MethodsByOverallRank() const;
  nlohmann::json ToJson() const;
  std::string MeanRankCsv() const;  // one row per dataset x classifier, then summaries
  std::string FriedmanCsv() const;
};

// Builds every table from the cells. Dataset, classifier and metric order is
// first appearance; `methods` fixes column order and may list methods that
// never appear (their cells become gaps). Duplicate cells throw.
RankTables AnalyzeRanks(const std::vector<ScoreCell>& cells,
                        const std::vector<std::string>& methods,
                        const TableOptions& options = {});

}  // namespace imbal::stats

#endif  // IMBAL_STATS_TABLES_H_
