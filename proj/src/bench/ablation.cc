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


#include "imbal/bench/ablation.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "imbal/bench/report.h"
#include "imbal/common/csv.h"
#include "imbal/stats/ranking.h"

namespace imbal::bench {
namespace {

constexpr const char* kCwgan = "cwgan";

std::string OrNa(const std::optional<double>& v) {
  return v ? fmt::format("{:.1f}", *v) : "N/A";
}

std::string OrNa(const std::optional<int>& v) { return v ? std::to_string(*v) : "N/A"; }

}  // namespace

std::vector<AblationRun> RunAblations(const BenchmarkConfig& base,
                                      const std::vector<Ablation>& variants,
                                      const RunOptions& options) {
  std::vector<AblationRun> runs;
  for (const Ablation& variant : variants) {
    AblationRun run;
    run.ablation = variant;
    BenchmarkConfig config = base;
    config.methods = {{.tag = resample::MethodTag::kCwgan}};
    config.ablation = variant;
    config.output_dir =
        (std::filesystem::path(base.output_dir) / "ablation" / variant.Name()).string();
    config.datasets.clear();
    for (const DatasetEntry& d : base.datasets) {
      if (variant.naive_categorical && d.schema.NumCategorical() == 0) {
        run.skipped_datasets.push_back(d.name());
      } else {
        config.datasets.push_back(d);
      }
    }
    if (!config.datasets.empty()) {
      spdlog::info("ablation {}: {} datasets", variant.Name(), config.datasets.size());
      run.result = RunBenchmark(config, options);
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

std::vector<AblationColumn> CounterfactualRanks(
    const std::vector<RunRecord>& baseline,
    const std::vector<std::pair<std::string, std::vector<RunRecord>>>& variants,
    const stats::TableOptions& options) {
  std::vector<RunRecord> others;
  for (const RunRecord& r : baseline) {
    if (r.metric.method != kCwgan) others.push_back(r);
  }
  const std::vector<std::string> methods = MethodOrder(baseline);
  const auto method_pos = std::find(methods.begin(), methods.end(), kCwgan);
  if (method_pos == methods.end()) {
    throw std::invalid_argument("ablation: the baseline has no cwgan records");
  }
  const size_t cw = static_cast<size_t>(method_pos - methods.begin());
  const stats::RankTables full =
      stats::AnalyzeRanks(ToScoreCells(SummariseScores(baseline)), methods, options);

  std::map<std::tuple<std::string, std::string, std::string>, double> full_scores;
  for (const ScoreSummary& s : SummariseScores(baseline)) {
    if (s.method == kCwgan) full_scores[{s.dataset, s.classifier, s.metric}] = s.mean;
  }

  std::vector<AblationColumn> columns;
  for (const auto& [name, records] : variants) {
    std::vector<RunRecord> swapped = others;
    for (RunRecord r : records) {
      r.metric.method = kCwgan;
      swapped.push_back(std::move(r));
    }
    const std::vector<ScoreSummary> variant_scores = SummariseScores(records);
    const stats::RankTables counter =
        stats::AnalyzeRanks(ToScoreCells(SummariseScores(swapped)), methods, options);
    for (const std::string& dataset : full.datasets) {
      AblationColumn col;
      col.ablation = name;
      col.dataset = dataset;
      col.mean_rank = full.by_dataset.at(dataset)[cw];
      int worse = 0, compared = 0;
      for (const ScoreSummary& s : variant_scores) {
        if (s.dataset != dataset) continue;
        const auto it = full_scores.find({s.dataset, s.classifier, s.metric});
        if (it == full_scores.end()) continue;
        ++compared;
        if (s.higher_is_better ? s.mean < it->second : s.mean > it->second) ++worse;
      }
      col.combinations = compared;
      if (compared > 0) {
        col.worse = worse;
        const std::vector<double>& mean_ranks = counter.by_dataset.at(dataset);
        col.counterfactual_mean_rank = mean_ranks[cw];
        const auto rank_of_means =
            stats::RankMethods(mean_ranks, false, stats::TiePolicy::kCompetition);
        col.counterfactual_rank_of_mean_ranks = static_cast<int>(rank_of_means[cw]);
      }
      columns.push_back(std::move(col));
    }
  }
  return columns;
}

std::string AblationTableCsv(const std::vector<AblationColumn>& columns) {
  std::vector<std::vector<std::string>> rows = {
      {"Ablated element"},
      {"Dataset"},
      {"Classifier-metric combinations where ablation performs worse"},
      {"Full model mean rank"},
      {kCounterfactualRow},
      {"Counterfactual rank of mean ranks"}};
  for (const AblationColumn& c : columns) {
    rows[0].push_back(c.ablation);
    rows[1].push_back(c.dataset);
    rows[2].push_back(c.worse ? fmt::format("{} of {}", *c.worse, c.combinations) : "N/A");
    rows[3].push_back(OrNa(c.mean_rank));
    rows[4].push_back(OrNa(c.counterfactual_mean_rank));
    rows[5].push_back(OrNa(c.counterfactual_rank_of_mean_ranks));
  }
  std::ostringstream out;
  for (const auto& row : rows) WriteCsvRow(out, row);
  return out.str();
}

nlohmann::json AblationJson(const std::vector<AblationColumn>& columns) {
  nlohmann::json out = nlohmann::json::array();
  auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  for (const AblationColumn& c : columns) {
    out.push_back({{"ablation", c.ablation},
                   {"dataset", c.dataset},
                   {"combinations", c.combinations},
                   {"worse", opt(c.worse)},
                   {"mean_rank", opt(c.mean_rank)},
                   {"counterfactual_mean_rank", opt(c.counterfactual_mean_rank)},
                   {"counterfactual_rank_of_mean_ranks",
                    opt(c.counterfactual_rank_of_mean_ranks)}});
  }
  return out;
}

}  // namespace imbal::bench
