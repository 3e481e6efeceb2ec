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


#ifndef IMBAL_COMMON_CSV_H_
#define IMBAL_COMMON_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace imbal {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a delimited text table with a header row. Supports double-quoted
// fields with "" escapes and CRLF line endings. Blank lines are skipped.
CsvTable ReadCsv(std::istream& in, char delimiter = ',');
CsvTable ReadCsvFile(const std::string& path, char delimiter = ',');

// Quotes a field only when it contains the delimiter, a quote or a newline.
std::string CsvEscape(std::string_view field, char delimiter = ',');
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields,
                 char delimiter = ',');

// Shortest round-trip decimal representation.
std::string FormatDouble(double value);

}  // namespace imbal

#endif  // IMBAL_COMMON_CSV_H_
