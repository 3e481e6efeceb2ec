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


#ifndef IMBAL_TABULAR_FRAME_H_
#define IMBAL_TABULAR_FRAME_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imbal/tabular/schema.h"

namespace imbal::tabular {

// One raw column. Numerical cells use NaN for missing; categorical cells are
// strings with a parallel missing mask.
struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::kNumerical;
  std::vector<double> numeric;
  std::vector<std::string> categorical;
  std::vector<bool> missing;

  bool IsMissing(size_t row) const { return missing[row]; }
};

// Raw tabular data in original units, feature columns in schema order plus
// the target labels.
struct TabularFrame {
  std::vector<Column> columns;
  std::string target_name;
  std::vector<std::string> target;

  size_t NumRows() const { return target.size(); }
  size_t NumColumns() const { return columns.size(); }

  // Empty frame with the schema's columns.
  static TabularFrame Empty(const DatasetSchema& schema);
  // Appends all rows of `other` (same column layout).
  void Append(const TabularFrame& other);
  TabularFrame SelectRows(const std::vector<size_t>& rows) const;
};

std::optional<double> ParseNumber(std::string_view cell);

// Loads a delimited table. Every schema column (and the target) must appear
// in the header; extra file columns are ignored.
TabularFrame LoadDataset(const std::string& path, const DatasetSchema& schema);
TabularFrame LoadDataset(const DatasetSchema& schema);

// Writes the frame with a header of schema column names followed by the
// target, so the output matches the input layout column-for-column.
void WriteDataset(const std::string& path, const TabularFrame& frame,
                  char delimiter = ',');

}  // namespace imbal::tabular

#endif  // IMBAL_TABULAR_FRAME_H_
