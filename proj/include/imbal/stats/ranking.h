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


#ifndef IMBAL_STATS_RANKING_H_
#define IMBAL_STATS_RANKING_H_

#include <string>
#include <string_view>
#include <vector>

namespace imbal::stats {

// kCompetition gives tied scores the best rank of their group ("1224");
// kAverage gives them the mean of the ranks they span ("1 2.5 2.5 4").
enum class TiePolicy { kCompetition, kAverage };

std::string TiePolicyName(TiePolicy policy);
TiePolicy ParseTiePolicy(std::string_view name);

// Rank 1 is the best score. NaN scores (missing methods) get a NaN rank and
// are ignored when ranking the rest.
std::vector<double> RankMethods(const std::vector<double>& scores,
                                bool higher_is_better, TiePolicy policy);

}  // namespace imbal::stats

#endif  // IMBAL_STATS_RANKING_H_
