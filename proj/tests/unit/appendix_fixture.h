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


#ifndef IMBAL_TESTS_UNIT_APPENDIX_FIXTURE_H_
#define IMBAL_TESTS_UNIT_APPENDIX_FIXTURE_H_

#include <string>
#include <vector>

#include "imbal/common/csv.h"
#include "imbal/stats/tables.h"

namespace imbal::testing {

inline const std::vector<std::string> kAppendixMethods = {
    "none", "smote", "b_smote", "random", "adasyn", "cwgan", "smote_nc"};

// The reference per-block rank table as score cells: a rank is a score where
// lower is better, so re-ranking under any tie policy starts from it.
inline std::vector<stats::ScoreCell> AppendixRankCells() {
  const CsvTable table = ReadCsvFile(std::string(IMBAL_TEST_DATA_DIR) + "/appendix_ranks.csv");
  std::vector<stats::ScoreCell> cells;
  for (const auto& row : table.rows) {
    for (size_t c = 2; c < table.header.size(); ++c) {
      const std::string& column = table.header[c];
      const size_t colon = column.find(':');
      cells.push_back({row[0], column.substr(0, colon), column.substr(colon + 1), row[1],
                       std::stod(row[c]), false});
    }
  }
  return cells;
}

}  // namespace imbal::testing

#endif  // IMBAL_TESTS_UNIT_APPENDIX_FIXTURE_H_
