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


#ifndef IMBAL_BENCH_REPORT_H_
#define IMBAL_BENCH_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "imbal/bench/results.h"
#include "imbal/stats/tables.h"
#include "json.hpp"

namespace imbal::bench {

// Empty lists select everything.
struct ReportFilter {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  std::vector<std::string> classifiers;

  bool Matches(const RunRecord& r) const;
};

// Seed statistics of one (dataset, classifier, metric, method) cell. Each
// seed contributes its bootstrap mean.
struct ScoreSummary {
  std::string dataset;
  std::string classifier;
  std::string metric;
  std::string method;
  double mean = 0;
  double std = 0;  // sample standard deviation over seeds, 0 for one seed
  int seeds = 0;
  bool higher_is_better = true;
};

std::vector<ScoreSummary> SummariseScores(const std::vector<RunRecord>& records);

// Methods present in the records, in the canonical method order.
std::vector<std::string> MethodOrder(const std::vector<RunRecord>& records);

std::vector<stats::ScoreCell> ToScoreCells(const std::vector<ScoreSummary>& summaries);

struct Report {
  std::vector<std::string> methods;
  std::vector<ScoreSummary> scores;
  std::optional<stats::RankTables> ranks;  // empty when nothing was selected
  std::vector<CellFailure> failures;

  // Rows dataset x method, columns classifier:metric, "mean (std)".
  std::string RawScoresCsv() const;
  // The same layout holding display ranks.
  std::string RankBlocksCsv() const;
  nlohmann::json ToJson() const;
};

Report BuildReport(const ResultsStore& store, const ReportFilter& filter = {},
                   const stats::TableOptions& options = {});

// Writes raw_scores.csv, rank_blocks.csv, mean_ranks.csv, friedman.csv and
// report.json into `dir`, and copies the cWGAN quality files of the results
// directory into dir/quality.
void WriteReport(const Report& report, const std::string& dir,
                 const std::string& results_dir = "");

}  // namespace imbal::bench

#endif  // IMBAL_BENCH_REPORT_H_
