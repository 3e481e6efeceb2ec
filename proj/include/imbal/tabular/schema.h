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


#ifndef IMBAL_TABULAR_SCHEMA_H_
#define IMBAL_TABULAR_SCHEMA_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace imbal::tabular {

enum class ColumnKind { kNumerical, kCategorical };

const char* ColumnKindName(ColumnKind kind);
ColumnKind ParseColumnKind(const std::string& name);

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumerical;
  // Declared vocabulary for categorical columns. Empty means "learn it from
  // the training fold".
  std::vector<std::string> categories;
};

// What load_dataset does with a categorical cell outside a declared
// vocabulary. kStrict fails; kMapToMode keeps the raw value and lets the
// preprocessor map it to the fitted mode.
enum class UnknownCategoryPolicy { kStrict, kMapToMode };

// Declared column typing of one dataset. Kinds are never sniffed here; see
// InferSchema for the optional guessing helper.
struct DatasetSchema {
  std::string name;
  // Resolved path to the delimited table (may be empty for in-memory use).
  std::string dataset_path;
  char delimiter = ',';
  std::vector<ColumnSpec> columns;  // feature columns, target excluded
  std::string target;
  std::string positive_label;
  // Optional declaration of the two target labels.
  std::vector<std::string> target_labels;
  std::vector<std::string> missing_markers{""};
  UnknownCategoryPolicy unknown_policy = UnknownCategoryPolicy::kMapToMode;

  // Throws std::invalid_argument when an invariant is violated.
  void Validate() const;

  size_t NumNumerical() const;
  size_t NumCategorical() const;
  std::optional<size_t> FindColumn(const std::string& name) const;
  bool IsMissing(const std::string& cell) const;

  nlohmann::json ToJson() const;
  // `base_dir` resolves a relative "dataset" entry.
  static DatasetSchema FromJson(const nlohmann::json& j,
                                const std::string& base_dir = "");
};

// Reads a schema config file; the dataset path is resolved relative to the
// config's directory.
DatasetSchema LoadSchemaFile(const std::string& path);

// Guesses kinds from a table: columns where every non-missing cell parses as
// a number are numerical, everything else categorical. Columns with more than
// `max_categories` distinct non-numeric values are still categorical but are
// logged as suspicious. A declared schema always takes precedence.
DatasetSchema InferSchema(const std::string& csv_path,
                          const std::string& target,
                          const std::string& positive_label,
                          char delimiter = ',', size_t max_categories = 20);

}  // namespace imbal::tabular

#endif  // IMBAL_TABULAR_SCHEMA_H_
