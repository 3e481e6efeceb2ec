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


#ifndef IMBAL_TABULAR_PREPROCESSOR_H_
#define IMBAL_TABULAR_PREPROCESSOR_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "imbal/tabular/frame.h"
#include "imbal/tabular/schema.h"
#include "json.hpp"

namespace imbal::tabular {

// Contiguous one-hot block of a categorical feature column.
struct OneHotSpan {
  size_t column = 0;  // index into the frame's feature columns
  size_t offset = 0;  // first encoded column
  size_t width = 0;   // number of categories

  bool operator==(const OneHotSpan&) const = default;
};

// Encoded column layout: the numeric block comes first, in schema order,
// followed by one one-hot span per categorical column.
struct EncodedLayout {
  std::vector<size_t> numeric_columns;
  std::vector<OneHotSpan> spans;

  size_t NumericWidth() const { return numeric_columns.size(); }
  size_t Width() const;
  bool operator==(const EncodedLayout&) const = default;
};

// Model-space data: min-max scaled numerics plus one-hot spans. labels[i] is
// 1 for the positive (minority) class.
struct EncodedMatrix {
  Eigen::MatrixXd values;
  EncodedLayout layout;
  std::vector<int> labels;

  size_t NumRows() const { return static_cast<size_t>(values.rows()); }
  EncodedMatrix SelectRows(const std::vector<size_t>& rows) const;
  void Append(const EncodedMatrix& other);
};

// Scaled numerics with categorical columns as category codes; the space
// SMOTENC works in.
struct MixedMatrix {
  Eigen::MatrixXd numeric;
  Eigen::MatrixXi codes;  // one column per categorical feature
  std::vector<size_t> cardinalities;
  std::vector<int> labels;

  size_t NumRows() const { return static_cast<size_t>(numeric.rows()); }
};

// Spans become argmax category codes; numerics are copied.
MixedMatrix ToMixed(const EncodedMatrix& matrix);
// Codes become exact one-hot spans. Throws on an out-of-range code.
EncodedMatrix FromMixed(const MixedMatrix& mixed, const EncodedLayout& layout);

struct NumericStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  bool constant = false;  // min == max; such columns encode to 0
};

struct CategoricalStats {
  std::vector<std::string> categories;
  size_t mode = 0;  // index into categories

  const std::string& Mode() const { return categories[mode]; }
};

// Fitted imputation, scaling and one-hot layout. Immutable after Fit and safe
// to share across threads.
class PreprocessorModel {
 public:
  // Numerics: mean imputation, then min/max of the imputed column.
  // Categoricals: most frequent value (ties to the earlier category).
  // Vocabularies not declared in the schema are learned from `frame` only,
  // sorted lexicographically.
  static PreprocessorModel Fit(const TabularFrame& frame,
                               const DatasetSchema& schema);

  // Unseen categories map to the fitted mode with a warning. Numeric values
  // outside the fitted range are not clipped.
  EncodedMatrix Transform(const TabularFrame& frame) const;

  // Numerics are unscaled; each span decodes to its argmax category. Throws
  // on an all-zero span.
  TabularFrame InverseTransform(const EncodedMatrix& matrix) const;

  MixedMatrix ToMixed(const EncodedMatrix& matrix) const;
  EncodedMatrix FromMixed(const MixedMatrix& mixed) const;

  const DatasetSchema& schema() const { return schema_; }
  const EncodedLayout& layout() const { return layout_; }
  const NumericStats& numeric(size_t column) const;
  const CategoricalStats& categorical(size_t column) const;
  const std::string& positive_label() const { return positive_label_; }
  const std::string& negative_label() const { return negative_label_; }

  nlohmann::json ToJson() const;
  static PreprocessorModel FromJson(const nlohmann::json& j);

 private:
  void BuildLayout();

  DatasetSchema schema_;
  std::vector<NumericStats> numeric_;        // indexed by feature column
  std::vector<CategoricalStats> categorical_;
  EncodedLayout layout_;
  std::string positive_label_;
  std::string negative_label_;
};

// Index of the largest entry of a span, first on ties. Throws when every
// entry is zero.
size_t SpanArgmax(const double* values, size_t width);

}  // namespace imbal::tabular

#endif  // IMBAL_TABULAR_PREPROCESSOR_H_
