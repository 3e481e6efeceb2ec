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


#include "imbal/tabular/schema.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "imbal/common/csv.h"
#include "imbal/tabular/frame.h"

namespace imbal::tabular {

const char* ColumnKindName(ColumnKind kind) {
  return kind == ColumnKind::kNumerical ? "numerical" : "categorical";
}

ColumnKind ParseColumnKind(const std::string& name) {
  if (name == "numerical" || name == "numeric") return ColumnKind::kNumerical;
  if (name == "categorical" || name == "nominal") {
    return ColumnKind::kCategorical;
  }
  throw std::invalid_argument("unknown column kind '" + name + "'");
}

void DatasetSchema::Validate() const {
  if (target.empty()) throw std::invalid_argument("schema: target is empty");
  if (positive_label.empty()) {
    throw std::invalid_argument("schema: positive_label is empty");
  }
  std::unordered_set<std::string> names;
  for (const auto& col : columns) {
    if (col.name.empty()) throw std::invalid_argument("schema: unnamed column");
    if (col.name == target) {
      throw std::invalid_argument("schema: target '" + target +
                                  "' listed as a feature column");
    }
    if (!names.insert(col.name).second) {
      throw std::invalid_argument("schema: duplicate column '" + col.name + "'");
    }
    if (col.kind == ColumnKind::kNumerical && !col.categories.empty()) {
      throw std::invalid_argument("schema: numerical column '" + col.name +
                                  "' declares categories");
    }
    std::unordered_set<std::string> cats;
    for (const auto& c : col.categories) {
      if (!cats.insert(c).second) {
        throw std::invalid_argument("schema: duplicate category '" + c +
                                    "' in column '" + col.name + "'");
      }
    }
  }
  if (!target_labels.empty()) {
    if (target_labels.size() != 2 || target_labels[0] == target_labels[1]) {
      throw std::invalid_argument("schema: target must have exactly 2 labels");
    }
    if (target_labels[0] != positive_label &&
        target_labels[1] != positive_label) {
      throw std::invalid_argument("schema: positive_label '" + positive_label +
                                  "' is not a declared target label");
    }
  }
}

size_t DatasetSchema::NumNumerical() const {
  size_t n = 0;
  for (const auto& c : columns) n += c.kind == ColumnKind::kNumerical;
  return n;
}

size_t DatasetSchema::NumCategorical() const {
  return columns.size() - NumNumerical();
}

std::optional<size_t> DatasetSchema::FindColumn(const std::string& n) const {
  for (size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == n) return i;
  }
  return std::nullopt;
}

bool DatasetSchema::IsMissing(const std::string& cell) const {
  for (const auto& m : missing_markers) {
    if (cell == m) return true;
  }
  return false;
}

nlohmann::json DatasetSchema::ToJson() const {
  nlohmann::json j;
  j["name"] = name;
  j["dataset"] = dataset_path;
  j["delimiter"] = std::string(1, delimiter);
  j["target"] = target;
  j["positive_label"] = positive_label;
  if (!target_labels.empty()) j["target_labels"] = target_labels;
  j["missing_markers"] = missing_markers;
  j["unknown_category_policy"] =
      unknown_policy == UnknownCategoryPolicy::kStrict ? "strict" : "mode";
  j["columns"] = nlohmann::json::array();
  for (const auto& c : columns) {
    nlohmann::json cj{{"name", c.name}, {"kind", ColumnKindName(c.kind)}};
    if (!c.categories.empty()) cj["categories"] = c.categories;
    j["columns"].push_back(cj);
  }
  return j;
}

DatasetSchema DatasetSchema::FromJson(const nlohmann::json& j,
                                      const std::string& base_dir) {
  DatasetSchema s;
  s.name = j.value("name", "");
  s.dataset_path = j.value("dataset", "");
  if (!s.dataset_path.empty() && !base_dir.empty() &&
      std::filesystem::path(s.dataset_path).is_relative()) {
    s.dataset_path =
        (std::filesystem::path(base_dir) / s.dataset_path).lexically_normal();
  }
  if (s.name.empty() && !s.dataset_path.empty()) {
    s.name = std::filesystem::path(s.dataset_path).stem().string();
  }
  const std::string delim = j.value("delimiter", ",");
  if (delim == "\\t" || delim == "tab") {
    s.delimiter = '\t';
  } else if (delim.size() == 1) {
    s.delimiter = delim[0];
  } else {
    throw std::invalid_argument("schema: delimiter must be one character");
  }
  s.target = j.at("target").get<std::string>();
  s.positive_label = j.at("positive_label").get<std::string>();
  if (j.contains("target_labels")) {
    s.target_labels = j.at("target_labels").get<std::vector<std::string>>();
  }
  if (j.contains("missing_markers")) {
    s.missing_markers = j.at("missing_markers").get<std::vector<std::string>>();
  }
  const std::string policy = j.value("unknown_category_policy", "mode");
  if (policy == "strict") {
    s.unknown_policy = UnknownCategoryPolicy::kStrict;
  } else if (policy == "mode") {
    s.unknown_policy = UnknownCategoryPolicy::kMapToMode;
  } else {
    throw std::invalid_argument("schema: unknown_category_policy must be "
                                "'strict' or 'mode'");
  }
  for (const auto& cj : j.at("columns")) {
    ColumnSpec c;
    c.name = cj.at("name").get<std::string>();
    c.kind = ParseColumnKind(cj.at("kind").get<std::string>());
    if (cj.contains("categories")) {
      for (const auto& v : cj.at("categories")) {
        c.categories.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    }
    if (c.name == s.target) {
      // Allowed for convenience; the target is tracked separately.
      if (c.kind != ColumnKind::kCategorical) {
        throw std::invalid_argument("schema: target must be categorical");
      }
      if (!c.categories.empty() && s.target_labels.empty()) {
        s.target_labels = c.categories;
      }
      continue;
    }
    s.columns.push_back(std::move(c));
  }
  s.Validate();
  return s;
}

DatasetSchema LoadSchemaFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open schema config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("schema config " + path + ": " + e.what());
  }
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return DatasetSchema::FromJson(j, dir);
}

DatasetSchema InferSchema(const std::string& csv_path,
                          const std::string& target,
                          const std::string& positive_label, char delimiter,
                          size_t max_categories) {
  const CsvTable table = ReadCsvFile(csv_path, delimiter);
  DatasetSchema s;
  s.dataset_path = csv_path;
  s.name = std::filesystem::path(csv_path).stem().string();
  s.delimiter = delimiter;
  s.target = target;
  s.positive_label = positive_label;
  bool saw_target = false;
  for (size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] == target) {
      saw_target = true;
      continue;
    }
    bool numeric = true;
    std::set<std::string> distinct;
    for (const auto& row : table.rows) {
      if (s.IsMissing(row[c])) continue;
      if (!ParseNumber(row[c]).has_value()) numeric = false;
      distinct.insert(row[c]);
    }
    ColumnSpec spec{table.header[c],
                    numeric ? ColumnKind::kNumerical : ColumnKind::kCategorical,
                    {}};
    if (!numeric && distinct.size() > max_categories) {
      spdlog::warn("column '{}' has {} distinct non-numeric values", spec.name,
                   distinct.size());
    }
    s.columns.push_back(std::move(spec));
  }
  if (!saw_target) {
    throw std::invalid_argument("target column '" + target + "' not in " +
                                csv_path);
  }
  s.Validate();
  return s;
}

}  // namespace imbal::tabular
