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


#include "imbal/stats/ranking.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace imbal::stats {

std::string TiePolicyName(TiePolicy policy) {
  switch (policy) {
    case TiePolicy::kCompetition: return "competition";
    case TiePolicy::kAverage: return "average";
  }
  throw std::invalid_argument("unknown tie policy");
}

TiePolicy ParseTiePolicy(std::string_view name) {
  for (TiePolicy p : {TiePolicy::kCompetition, TiePolicy::kAverage}) {
    if (TiePolicyName(p) == name) return p;
  }
  throw std::invalid_argument("unknown tie policy '" + std::string(name) + "'");
}

std::vector<double> RankMethods(const std::vector<double>& scores,
                                bool higher_is_better, TiePolicy policy) {
  std::vector<size_t> order;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!std::isnan(scores[i])) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return higher_is_better ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  std::vector<double> ranks(scores.size(), std::numeric_limits<double>::quiet_NaN());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    // Positions i..j-1 (0-based) share one rank.
    const double rank = policy == TiePolicy::kCompetition
                            ? static_cast<double>(i + 1)
                            : 0.5 * static_cast<double>(i + 1 + j);
    for (size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace imbal::stats
