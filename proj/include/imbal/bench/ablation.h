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


#ifndef IMBAL_BENCH_ABLATION_H_
#define IMBAL_BENCH_ABLATION_H_

#include <optional>
#include <string>
#include <vector>

#include "imbal/bench/config.h"
#include "imbal/bench/results.h"
#include "imbal/bench/runner.h"
#include "imbal/stats/tables.h"
#include "json.hpp"

namespace imbal::bench {

struct AblationRun {
  Ablation ablation;
  std::vector<std::string> skipped_datasets;  // nothing to ablate there
  BenchmarkResult result;
};

// Trains only the cWGAN once per variant, on the partitions of `base`, into
// base.output_dir/ablation/<variant>. The categorical variant skips datasets
// without categorical columns.
std::vector<AblationRun> RunAblations(const BenchmarkConfig& base,
                                      const std::vector<Ablation>& variants,
                                      const RunOptions& options = {});

// One column of the ablation table: a variant on one dataset. Empty
// optionals print as N/A.
struct AblationColumn {
  std::string ablation;
  std::string dataset;
  int combinations = 0;  // classifier-metric pairs compared
  std::optional<int> worse;
  std::optional<double> mean_rank;          // full cWGAN, for comparison
  std::optional<double> counterfactual_mean_rank;
  std::optional<int> counterfactual_rank_of_mean_ranks;
};

// Replaces the full cWGAN records by each variant's records and recomputes
// the rankings. "Worse" counts classifier-metric pairs where the variant's
// seed-mean score is strictly worse than the full model's.
std::vector<AblationColumn> CounterfactualRanks(
    const std::vector<RunRecord>& baseline,
    const std::vector<std::pair<std::string, std::vector<RunRecord>>>& variants,
    const stats::TableOptions& options = {});

inline constexpr const char* kCounterfactualRow = "Counterfactual mean rank";

// Rows "Ablated element", "Dataset", the worse count, "Counterfactual mean
// rank" and "Counterfactual rank of mean ranks"; one column per entry.
std::string AblationTableCsv(const std::vector<AblationColumn>& columns);
nlohmann::json AblationJson(const std::vector<AblationColumn>& columns);

}  // namespace imbal::bench

#endif  // IMBAL_BENCH_ABLATION_H_
