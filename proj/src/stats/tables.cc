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


#include "imbal/stats/tables.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace imbal::stats {
namespace {

constexpr double kGap = std::numeric_limits<double>::quiet_NaN();

void AddUnique(std::vector<std::string>& names, const std::string& name) {
  if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
}

ptrdiff_t Position(const std::vector<std::string>& names, std::string_view name) {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : it - names.begin();
}

// Element-wise mean of rank vectors, skipping NaN entries.
class MeanAccumulator {
 public:
  explicit MeanAccumulator(size_t k) : sum_(k, 0.0), count_(k, 0) {}

  void Add(const std::vector<double>& ranks) {
    for (size_t j = 0; j < ranks.size(); ++j) {
      if (std::isnan(ranks[j])) continue;
      sum_[j] += ranks[j];
      ++count_[j];
    }
  }

  std::vector<double> Mean() const {
    std::vector<double> out(sum_.size(), kGap);
    for (size_t j = 0; j < sum_.size(); ++j) {
      if (count_[j] > 0) out[j] = sum_[j] / count_[j];
    }
    return out;
  }

 private:
  std::vector<double> sum_;
  std::vector<int> count_;
};

std::vector<double> RankBlock(const std::vector<double>& scores, bool higher_is_better,
                              TiePolicy policy, ptrdiff_t smote, ptrdiff_t smote_nc,
                              bool inherit) {
  std::vector<double> ranks = RankMethods(scores, higher_is_better, policy);
  if (inherit) ranks[static_cast<size_t>(smote_nc)] = ranks[static_cast<size_t>(smote)];
  return ranks;
}

std::string FormatRank(double v) {
  return std::isnan(v) ? std::string() : fmt::format("{:.4f}", v);
}

nlohmann::json RankJson(const std::vector<double>& ranks) {
  nlohmann::json out = nlohmann::json::array();
  for (double r : ranks) out.push_back(std::isnan(r) ? nlohmann::json(nullptr) : nlohmann::json(r));
  return out;
}

}  // namespace

RankTables AnalyzeRanks(const std::vector<ScoreCell>& cells,
                        const std::vector<std::string>& methods,
                        const TableOptions& options) {
  if (methods.size() < 2) throw std::invalid_argument("rank tables: need at least two methods");
  RankTables t;
  t.methods = methods;
  std::map<BlockKey, std::vector<double>> scores;
  std::map<BlockKey, bool> direction;
  for (const ScoreCell& c : cells) {
    const ptrdiff_t j = Position(methods, c.method);
    if (j < 0) continue;
    AddUnique(t.datasets, c.dataset);
    AddUnique(t.classifiers, c.classifier);
    AddUnique(t.metrics, c.metric);
    const BlockKey key{c.dataset, c.classifier, c.metric};
    auto [it, fresh] = scores.try_emplace(key, methods.size(), kGap);
    if (!std::isnan(it->second[static_cast<size_t>(j)])) {
      throw std::invalid_argument(fmt::format("rank tables: duplicate cell {}/{}/{}/{}",
                                              c.dataset, c.classifier, c.metric, c.method));
    }
    it->second[static_cast<size_t>(j)] = c.score;
    direction[key] = c.higher_is_better;
  }

  const ptrdiff_t smote = Position(methods, "smote");
  const ptrdiff_t smote_nc = Position(methods, "smote_nc");
  for (const std::string& d : t.datasets) {
    for (const std::string& cl : t.classifiers) {
      for (const std::string& m : t.metrics) {
        const BlockKey key{d, cl, m};
        auto it = scores.find(key);
        std::vector<double> block =
            it == scores.end() ? std::vector<double>(methods.size(), kGap) : it->second;
        const bool higher = it == scores.end() ? true : direction[key];
        bool inherit = false;
        if (smote >= 0 && smote_nc >= 0 && std::isnan(block[static_cast<size_t>(smote_nc)]) &&
            !std::isnan(block[static_cast<size_t>(smote)])) {
          if (options.smote_nc_fill == SmoteNcFill::kCopyScore) {
            block[static_cast<size_t>(smote_nc)] = block[static_cast<size_t>(smote)];
          } else if (options.smote_nc_fill == SmoteNcFill::kInheritRank) {
            inherit = true;
          }
        }
        for (size_t j = 0; j < methods.size(); ++j) {
          if (std::isnan(block[j]) && !(inherit && static_cast<ptrdiff_t>(j) == smote_nc)) {
            t.gaps.push_back(fmt::format("{}/{}/{}/{}", d, cl, m, methods[j]));
          }
        }
        t.display_ranks[key] =
            RankBlock(block, higher, options.display_policy, smote, smote_nc, inherit);
        // The Friedman statistic assumes every row holds a full ranking, so an
        // inherited rank enters it as a tie with smote instead.
        if (inherit) block[static_cast<size_t>(smote_nc)] = block[static_cast<size_t>(smote)];
        t.friedman_ranks[key] = RankMethods(block, higher, options.friedman_policy);
      }
    }
  }

  const size_t k = methods.size();
  MeanAccumulator overall(k);
  std::map<std::string, MeanAccumulator> per_dataset, per_classifier, per_metric;
  for (const std::string& d : t.datasets) {
    MeanAccumulator ds(k);
    for (const std::string& cl : t.classifiers) {
      MeanAccumulator dc(k);
      for (const std::string& m : t.metrics) {
        const auto& ranks = t.display_ranks.at({d, cl, m});
        dc.Add(ranks);
        ds.Add(ranks);
        overall.Add(ranks);
        per_classifier.try_emplace(cl, k).first->second.Add(ranks);
        per_metric.try_emplace(m, k).first->second.Add(ranks);
      }
      t.by_dataset_classifier[{d, cl}] = dc.Mean();
    }
    t.by_dataset[d] = ds.Mean();
  }
  for (const auto& [name, acc] : per_classifier) t.by_classifier[name] = acc.Mean();
  for (const auto& [name, acc] : per_metric) t.by_metric[name] = acc.Mean();
  t.overall = overall.Mean();

  for (const std::string& cl : t.classifiers) {
    for (const std::string& m : t.metrics) {
      MeanAccumulator cm(k);
      FriedmanRow row{cl, m, {}, std::nullopt};
      std::vector<std::vector<double>> complete;
      for (const std::string& d : t.datasets) {
        cm.Add(t.display_ranks.at({d, cl, m}));
        const auto& ranks = t.friedman_ranks.at({d, cl, m});
        if (std::none_of(ranks.begin(), ranks.end(), [](double r) { return std::isnan(r); })) {
          row.datasets.push_back(d);
          complete.push_back(ranks);
        }
      }
      t.by_classifier_metric[{cl, m}] = cm.Mean();
      if (complete.size() >= 2) {
        Eigen::MatrixXd matrix(static_cast<Eigen::Index>(complete.size()),
                               static_cast<Eigen::Index>(k));
        for (size_t i = 0; i < complete.size(); ++i) {
          for (size_t j = 0; j < k; ++j) {
            matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = complete[i][j];
          }
        }
        row.result = FriedmanImanDavenport(matrix, options.tie_correction);
      }
      t.friedman.push_back(std::move(row));
    }
  }
  return t;
}

std::vector<std::string> RankTables::MethodsByOverallRank() const {
  std::vector<size_t> order(methods.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const double ra = std::isnan(overall[a]) ? INFINITY : overall[a];
    const double rb = std::isnan(overall[b]) ? INFINITY : overall[b];
    return ra < rb;
  });
  std::vector<std::string> out;
  for (size_t j : order) out.push_back(methods[j]);
  return out;
}

std::string RankTables::MeanRankCsv() const {
  std::string out = "dataset,classifier";
  for (const std::string& m : methods) out += "," + m;
  out += "\n";
  auto row = [&](const std::string& a, const std::string& b, const std::vector<double>& ranks) {
    out += a + "," + b;
    for (double r : ranks) out += "," + FormatRank(r);
    out += "\n";
  };
  for (const std::string& d : datasets) {
    for (const std::string& cl : classifiers) row(d, cl, by_dataset_classifier.at({d, cl}));
  }
  for (const std::string& d : datasets) row(d, "all", by_dataset.at(d));
  for (const std::string& cl : classifiers) row("all", cl, by_classifier.at(cl));
  for (const std::string& m : metrics) row("all", "metric:" + m, by_metric.at(m));
  row("all", "all", overall);
  return out;
}

std::string RankTables::FriedmanCsv() const {
  std::string out = "classifier,metric,n,k,chi2,f,p\n";
  for (const FriedmanRow& r : friedman) {
    if (!r.result) {
      out += fmt::format("{},{},{},{},,,\n", r.classifier, r.metric, r.datasets.size(),
                         methods.size());
      continue;
    }
    const FriedmanResult& f = *r.result;
    out += fmt::format("{},{},{},{},{:.4f},{},{:.4f}\n", r.classifier, r.metric, f.n, f.k,
                       f.chi2, f.divergent ? std::string("inf") : fmt::format("{:.4f}", f.f),
                       f.p);
  }
  return out;
}

nlohmann::json RankTables::ToJson() const {
  nlohmann::json j;
  j["methods"] = methods;
  j["datasets"] = datasets;
  j["classifiers"] = classifiers;
  j["metrics"] = metrics;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [key, ranks] : display_ranks) {
    blocks.push_back({{"dataset", key.dataset},
                      {"classifier", key.classifier},
                      {"metric", key.metric},
                      {"ranks", RankJson(ranks)},
                      {"friedman_ranks", RankJson(friedman_ranks.at(key))}});
  }
  j["blocks"] = std::move(blocks);
  nlohmann::json dc = nlohmann::json::array();
  for (const auto& [key, ranks] : by_dataset_classifier) {
    dc.push_back({{"dataset", key.first}, {"classifier", key.second}, {"ranks", RankJson(ranks)}});
  }
  j["by_dataset_classifier"] = std::move(dc);
  nlohmann::json cm = nlohmann::json::array();
  for (const auto& [key, ranks] : by_classifier_metric) {
    cm.push_back({{"classifier", key.first}, {"metric", key.second}, {"ranks", RankJson(ranks)}});
  }
  j["by_classifier_metric"] = std::move(cm);
  for (const auto& [name, ranks] : by_dataset) j["by_dataset"][name] = RankJson(ranks);
  for (const auto& [name, ranks] : by_classifier) j["by_classifier"][name] = RankJson(ranks);
  for (const auto& [name, ranks] : by_metric) j["by_metric"][name] = RankJson(ranks);
  j["overall"] = RankJson(overall);
  j["methods_by_overall_rank"] = MethodsByOverallRank();
  nlohmann::json fr = nlohmann::json::array();
  for (const FriedmanRow& r : friedman) {
    fr.push_back({{"classifier", r.classifier},
                  {"metric", r.metric},
                  {"datasets", r.datasets},
                  {"test", r.result ? r.result->ToJson() : nlohmann::json(nullptr)}});
  }
  j["friedman"] = std::move(fr);
  j["gaps"] = gaps;
  return j;
}

}  // namespace imbal::stats
