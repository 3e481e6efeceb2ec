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


#include "imbal/tabular/frame.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "imbal/common/csv.h"

namespace imbal::tabular {

std::optional<double> ParseNumber(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) {
    cell.remove_prefix(1);
  }
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) {
    cell.remove_suffix(1);
  }
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

TabularFrame TabularFrame::Empty(const DatasetSchema& schema) {
  TabularFrame f;
  f.target_name = schema.target;
  for (const auto& spec : schema.columns) {
    Column c;
    c.name = spec.name;
    c.kind = spec.kind;
    f.columns.push_back(std::move(c));
  }
  return f;
}

void TabularFrame::Append(const TabularFrame& other) {
  if (other.columns.size() != columns.size()) {
    throw std::invalid_argument("TabularFrame::Append: column mismatch");
  }
  for (size_t c = 0; c < columns.size(); ++c) {
    auto& dst = columns[c];
    const auto& src = other.columns[c];
    if (dst.kind != src.kind || dst.name != src.name) {
      throw std::invalid_argument("TabularFrame::Append: column mismatch");
    }
    dst.numeric.insert(dst.numeric.end(), src.numeric.begin(),
                       src.numeric.end());
    dst.categorical.insert(dst.categorical.end(), src.categorical.begin(),
                           src.categorical.end());
    dst.missing.insert(dst.missing.end(), src.missing.begin(),
                       src.missing.end());
  }
  target.insert(target.end(), other.target.begin(), other.target.end());
}

TabularFrame TabularFrame::SelectRows(const std::vector<size_t>& rows) const {
  TabularFrame out;
  out.target_name = target_name;
  for (const auto& src : columns) {
    Column c;
    c.name = src.name;
    c.kind = src.kind;
    for (size_t r : rows) {
      if (src.kind == ColumnKind::kNumerical) {
        c.numeric.push_back(src.numeric[r]);
      } else {
        c.categorical.push_back(src.categorical[r]);
      }
      c.missing.push_back(src.missing[r]);
    }
    out.columns.push_back(std::move(c));
  }
  for (size_t r : rows) out.target.push_back(target[r]);
  return out;
}

TabularFrame LoadDataset(const std::string& path, const DatasetSchema& schema) {
  schema.Validate();
  const CsvTable table = ReadCsvFile(path, schema.delimiter);
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < table.header.size(); ++i) index[table.header[i]] = i;

  auto column_index = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw std::invalid_argument("unknown column '" + name + "' (not in " +
                                  path + " header)");
    }
    return it->second;
  };

  TabularFrame frame = TabularFrame::Empty(schema);
  const size_t n = table.rows.size();
  for (size_t c = 0; c < schema.columns.size(); ++c) {
    const auto& spec = schema.columns[c];
    const size_t src = column_index(spec.name);
    Column& col = frame.columns[c];
    col.missing.resize(n);
    std::unordered_set<std::string> declared(spec.categories.begin(),
                                             spec.categories.end());
    if (spec.kind == ColumnKind::kNumerical) {
      col.numeric.resize(n);
    } else {
      col.categorical.resize(n);
    }
    for (size_t r = 0; r < n; ++r) {
      const std::string& cell = table.rows[r][src];
      if (schema.IsMissing(cell)) {
        col.missing[r] = true;
        if (spec.kind == ColumnKind::kNumerical) {
          col.numeric[r] = std::numeric_limits<double>::quiet_NaN();
        }
        continue;
      }
      if (spec.kind == ColumnKind::kNumerical) {
        auto v = ParseNumber(cell);
        if (!v) {
          throw std::invalid_argument("unparseable numeric cell '" + cell +
                                      "' in column '" + spec.name + "', row " +
                                      std::to_string(r + 1));
        }
        col.numeric[r] = *v;
      } else {
        if (!declared.empty() && !declared.contains(cell) &&
            schema.unknown_policy == UnknownCategoryPolicy::kStrict) {
          throw std::invalid_argument("unknown category '" + cell +
                                      "' in column '" + spec.name + "', row " +
                                      std::to_string(r + 1));
        }
        col.categorical[r] = cell;
      }
    }
  }

  const size_t target_src = column_index(schema.target);
  std::unordered_set<std::string> labels;
  frame.target.reserve(n);
  for (size_t r = 0; r < n; ++r) {
    const std::string& cell = table.rows[r][target_src];
    if (schema.IsMissing(cell)) {
      throw std::invalid_argument("missing target value at row " +
                                  std::to_string(r + 1));
    }
    if (!schema.target_labels.empty() &&
        cell != schema.target_labels[0] && cell != schema.target_labels[1]) {
      throw std::invalid_argument("unknown target label '" + cell + "'");
    }
    labels.insert(cell);
    frame.target.push_back(cell);
  }
  if (labels.size() > 2) {
    throw std::invalid_argument("target column '" + schema.target +
                                "' has more than 2 labels");
  }
  return frame;
}

TabularFrame LoadDataset(const DatasetSchema& schema) {
  if (schema.dataset_path.empty()) {
    throw std::invalid_argument("schema has no dataset path");
  }
  return LoadDataset(schema.dataset_path, schema);
}

void WriteDataset(const std::string& path, const TabularFrame& frame,
                  char delimiter) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::vector<std::string> fields;
  for (const auto& c : frame.columns) fields.push_back(c.name);
  fields.push_back(frame.target_name);
  WriteCsvRow(out, fields, delimiter);
  for (size_t r = 0; r < frame.NumRows(); ++r) {
    fields.clear();
    for (const auto& c : frame.columns) {
      if (c.missing[r]) {
        fields.emplace_back();
      } else if (c.kind == ColumnKind::kNumerical) {
        fields.push_back(FormatDouble(c.numeric[r]));
      } else {
        fields.push_back(c.categorical[r]);
      }
    }
    fields.push_back(frame.target[r]);
    WriteCsvRow(out, fields, delimiter);
  }
}

}  // namespace imbal::tabular
