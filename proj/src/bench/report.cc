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


#include "imbal/bench/report.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "imbal/common/csv.h"
#include "imbal/resample/oversample.h"

namespace imbal::bench {
namespace {

bool Selected(const std::vector<std::string>& allowed, const std::string& name) {
  return allowed.empty() || std::find(allowed.begin(), allowed.end(), name) != allowed.end();
}

using SummaryKey = std::tuple<std::string, std::string, std::string, std::string>;

std::string Joined(const std::vector<std::string>& cells) {
  std::ostringstream out;
  WriteCsvRow(out, cells);
  return out.str();
}

}  // namespace

bool ReportFilter::Matches(const RunRecord& r) const {
  return Selected(datasets, r.metric.dataset) && Selected(methods, r.metric.method) &&
         Selected(classifiers, r.metric.classifier);
}

std::vector<ScoreSummary> SummariseScores(const std::vector<RunRecord>& records) {
  std::map<SummaryKey, std::vector<double>> values;
  std::vector<SummaryKey> order;
  std::map<SummaryKey, bool> direction;
  for (const RunRecord& r : records) {
    const auto& m = r.metric;
    const SummaryKey key{m.dataset, m.classifier, eval::MetricName(m.metric), m.method};
    auto [it, fresh] = values.try_emplace(key);
    if (fresh) order.push_back(key);
    it->second.push_back(m.BootstrapMean());
    direction[key] = eval::HigherIsBetter(m.metric);
  }
  std::vector<ScoreSummary> out;
  for (const SummaryKey& key : order) {
    const auto& v = values.at(key);
    const double n = static_cast<double>(v.size());
    double mean = 0;
    for (double x : v) mean += x;
    mean /= n;
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), mean,
                   v.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0, static_cast<int>(v.size()),
                   direction.at(key)});
  }
  return out;
}

std::vector<std::string> MethodOrder(const std::vector<RunRecord>& records) {
  std::vector<std::string> methods;
  for (resample::MethodTag tag : resample::kAllMethods) {
    const std::string name = resample::MethodName(tag);
    if (std::any_of(records.begin(), records.end(),
                    [&](const RunRecord& r) { return r.metric.method == name; })) {
      methods.push_back(name);
    }
  }
  return methods;
}

std::vector<stats::ScoreCell> ToScoreCells(const std::vector<ScoreSummary>& summaries) {
  std::vector<stats::ScoreCell> cells;
  for (const ScoreSummary& s : summaries) {
    if (!std::isfinite(s.mean)) continue;  // a flagged cell becomes a gap
    cells.push_back({s.dataset, s.classifier, s.metric, s.method, s.mean, s.higher_is_better});
  }
  return cells;
}

Report BuildReport(const ResultsStore& store, const ReportFilter& filter,
                   const stats::TableOptions& options) {
  std::vector<RunRecord> selected;
  for (const RunRecord& r : store.records) {
    if (filter.Matches(r)) selected.push_back(r);
  }
  Report report;
  report.methods = MethodOrder(selected);
  report.scores = SummariseScores(selected);
  for (const CellFailure& f : store.failures) {
    if (Selected(filter.datasets, f.dataset) && Selected(filter.methods, f.method)) {
      report.failures.push_back(f);
    }
  }
  if (report.methods.size() >= 2) {
    report.ranks = stats::AnalyzeRanks(ToScoreCells(report.scores), report.methods, options);
  }
  return report;
}

std::string Report::RawScoresCsv() const {
  if (!ranks) return "";
  std::map<SummaryKey, const ScoreSummary*> index;
  for (const ScoreSummary& s : scores) index[{s.dataset, s.classifier, s.metric, s.method}] = &s;
  std::vector<std::string> header = {"dataset", "method"};
  for (const auto& c : ranks->classifiers) {
    for (const auto& m : ranks->metrics) header.push_back(c + ":" + m);
  }
  std::string out = Joined(header);
  for (const auto& d : ranks->datasets) {
    for (const auto& method : methods) {
      std::vector<std::string> row = {d, method};
      for (const auto& c : ranks->classifiers) {
        for (const auto& m : ranks->metrics) {
          const auto it = index.find({d, c, m, method});
          row.push_back(it == index.end()
                            ? ""
                            : fmt::format("{:.4f} ({:.4f})", it->second->mean, it->second->std));
        }
      }
      out += Joined(row);
    }
  }
  return out;
}

std::string Report::RankBlocksCsv() const {
  if (!ranks) return "";
  std::vector<std::string> header = {"dataset", "method"};
  for (const auto& c : ranks->classifiers) {
    for (const auto& m : ranks->metrics) header.push_back(c + ":" + m);
  }
  std::string out = Joined(header);
  for (const auto& d : ranks->datasets) {
    for (size_t j = 0; j < methods.size(); ++j) {
      std::vector<std::string> row = {d, methods[j]};
      for (const auto& c : ranks->classifiers) {
        for (const auto& m : ranks->metrics) {
          const double r = ranks->display_ranks.at({d, c, m})[j];
          row.push_back(std::isnan(r) ? "" : FormatDouble(r));
        }
      }
      out += Joined(row);
    }
  }
  return out;
}

nlohmann::json Report::ToJson() const {
  nlohmann::json j;
  j["methods"] = methods;
  j["scores"] = nlohmann::json::array();
  for (const ScoreSummary& s : scores) {
    j["scores"].push_back({{"dataset", s.dataset},
                           {"classifier", s.classifier},
                           {"metric", s.metric},
                           {"method", s.method},
                           {"mean", s.mean},
                           {"std", s.std},
                           {"seeds", s.seeds}});
  }
  j["ranks"] = ranks ? ranks->ToJson() : nlohmann::json(nullptr);
  j["failures"] = nlohmann::json::array();
  for (const CellFailure& f : failures) j["failures"].push_back(f.ToJson());
  return j;
}

void WriteReport(const Report& report, const std::string& dir, const std::string& results_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path root(dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(root / name);
    if (!out) throw std::runtime_error("cannot write '" + (root / name).string() + "'");
    out << text;
  };
  write("raw_scores.csv", report.RawScoresCsv());
  write("rank_blocks.csv", report.RankBlocksCsv());
  write("mean_ranks.csv", report.ranks ? report.ranks->MeanRankCsv() : "");
  write("friedman.csv", report.ranks ? report.ranks->FriedmanCsv() : "");
  write("report.json", report.ToJson().dump(2) + "\n");
  if (!results_dir.empty() && fs::exists(fs::path(results_dir) / "quality") &&
      fs::absolute(results_dir) != fs::absolute(dir)) {
    fs::create_directories(root / "quality");
    for (const auto& file : fs::directory_iterator(fs::path(results_dir) / "quality")) {
      fs::copy_file(file.path(), root / "quality" / file.path().filename(),
                    fs::copy_options::overwrite_existing);
    }
  }
}

}  // namespace imbal::bench
