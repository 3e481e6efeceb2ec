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


#include "imbal/tabular/preprocessor.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <spdlog/spdlog.h>

namespace imbal::tabular {

size_t EncodedLayout::Width() const {
  size_t w = NumericWidth();
  for (const auto& s : spans) w += s.width;
  return w;
}

EncodedMatrix EncodedMatrix::SelectRows(const std::vector<size_t>& rows) const {
  EncodedMatrix out;
  out.layout = layout;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
  out.labels.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.values.row(static_cast<Eigen::Index>(i)) =
        values.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

void EncodedMatrix::Append(const EncodedMatrix& other) {
  if (values.size() == 0 && labels.empty()) {
    *this = other;
    return;
  }
  if (other.values.cols() != values.cols()) {
    throw std::invalid_argument("EncodedMatrix::Append: width mismatch");
  }
  const Eigen::Index n = values.rows();
  values.conservativeResize(n + other.values.rows(), Eigen::NoChange);
  values.bottomRows(other.values.rows()) = other.values;
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
}

size_t SpanArgmax(const double* values, size_t width) {
  size_t best = 0;
  bool all_zero = true;
  for (size_t i = 0; i < width; ++i) {
    if (values[i] != 0.0) all_zero = false;
    if (values[i] > values[best]) best = i;
  }
  if (all_zero) throw std::invalid_argument("degenerate one-hot span (all zeros)");
  return best;
}

PreprocessorModel PreprocessorModel::Fit(const TabularFrame& frame,
                                         const DatasetSchema& schema) {
  schema.Validate();
  if (frame.NumRows() == 0) {
    throw std::invalid_argument("fit_preprocessor: empty frame");
  }
  if (frame.NumColumns() != schema.columns.size()) {
    throw std::invalid_argument("fit_preprocessor: frame/schema mismatch");
  }
  PreprocessorModel m;
  m.schema_ = schema;
  m.numeric_.resize(schema.columns.size());
  m.categorical_.resize(schema.columns.size());
  const size_t n = frame.NumRows();

  for (size_t c = 0; c < schema.columns.size(); ++c) {
    const Column& col = frame.columns[c];
    const ColumnSpec& spec = schema.columns[c];
    if (col.kind != spec.kind || col.name != spec.name) {
      throw std::invalid_argument("fit_preprocessor: column '" + col.name +
                                  "' does not match schema");
    }
    if (spec.kind == ColumnKind::kNumerical) {
      double sum = 0.0;
      size_t count = 0;
      for (size_t r = 0; r < n; ++r) {
        if (!col.missing[r]) {
          sum += col.numeric[r];
          ++count;
        }
      }
      if (count == 0) {
        throw std::invalid_argument("fit_preprocessor: column '" + col.name +
                                    "' is entirely missing");
      }
      NumericStats s;
      s.mean = sum / static_cast<double>(count);
      // Imputed cells equal the mean, which lies inside [min, max] of the
      // observed values, so the range of the imputed column is the observed
      // range.
      s.min = s.mean;
      s.max = s.mean;
      for (size_t r = 0; r < n; ++r) {
        if (col.missing[r]) continue;
        s.min = std::min(s.min, col.numeric[r]);
        s.max = std::max(s.max, col.numeric[r]);
      }
      s.constant = !(s.max > s.min);
      if (s.constant) {
        spdlog::warn("column '{}' is constant on the training data; it encodes "
                     "to 0",
                     col.name);
      }
      m.numeric_[c] = s;
    } else {
      std::map<std::string, size_t> counts;
      for (size_t r = 0; r < n; ++r) {
        if (!col.missing[r]) ++counts[col.categorical[r]];
      }
      if (counts.empty()) {
        throw std::invalid_argument("fit_preprocessor: column '" + col.name +
                                    "' is entirely missing");
      }
      CategoricalStats s;
      if (!spec.categories.empty()) {
        s.categories = spec.categories;
      } else {
        for (const auto& [k, v] : counts) s.categories.push_back(k);
      }
      size_t best_count = 0;
      bool found = false;
      for (size_t i = 0; i < s.categories.size(); ++i) {
        auto it = counts.find(s.categories[i]);
        const size_t cnt = it == counts.end() ? 0 : it->second;
        if (!found || cnt > best_count) {
          best_count = cnt;
          s.mode = i;
          found = true;
        }
      }
      m.categorical_[c] = std::move(s);
    }
  }

  std::set<std::string> labels(frame.target.begin(), frame.target.end());
  m.positive_label_ = schema.positive_label;
  if (!schema.target_labels.empty()) {
    m.negative_label_ = schema.target_labels[0] == schema.positive_label
                            ? schema.target_labels[1]
                            : schema.target_labels[0];
  } else {
    labels.erase(schema.positive_label);
    if (labels.size() != 1) {
      throw std::invalid_argument(
          "fit_preprocessor: target must have exactly 2 labels including '" +
          schema.positive_label + "'");
    }
    m.negative_label_ = *labels.begin();
  }
  m.BuildLayout();
  return m;
}

void PreprocessorModel::BuildLayout() {
  layout_ = EncodedLayout{};
  for (size_t c = 0; c < schema_.columns.size(); ++c) {
    if (schema_.columns[c].kind == ColumnKind::kNumerical) {
      layout_.numeric_columns.push_back(c);
    }
  }
  size_t offset = layout_.numeric_columns.size();
  for (size_t c = 0; c < schema_.columns.size(); ++c) {
    if (schema_.columns[c].kind == ColumnKind::kCategorical) {
      const size_t w = categorical_[c].categories.size();
      layout_.spans.push_back({c, offset, w});
      offset += w;
    }
  }
}

const NumericStats& PreprocessorModel::numeric(size_t column) const {
  if (schema_.columns.at(column).kind != ColumnKind::kNumerical) {
    throw std::invalid_argument("column is not numerical");
  }
  return numeric_[column];
}

const CategoricalStats& PreprocessorModel::categorical(size_t column) const {
  if (schema_.columns.at(column).kind != ColumnKind::kCategorical) {
    throw std::invalid_argument("column is not categorical");
  }
  return categorical_[column];
}

EncodedMatrix PreprocessorModel::Transform(const TabularFrame& frame) const {
  if (frame.NumColumns() != schema_.columns.size()) {
    throw std::invalid_argument("transform: frame/schema mismatch");
  }
  const size_t n = frame.NumRows();
  EncodedMatrix out;
  out.layout = layout_;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                     static_cast<Eigen::Index>(layout_.Width()));
  for (size_t j = 0; j < layout_.numeric_columns.size(); ++j) {
    const size_t c = layout_.numeric_columns[j];
    const Column& col = frame.columns[c];
    const NumericStats& s = numeric_[c];
    for (size_t r = 0; r < n; ++r) {
      const double x = col.missing[r] ? s.mean : col.numeric[r];
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          s.constant ? 0.0 : (x - s.min) / (s.max - s.min);
    }
  }
  for (const auto& span : layout_.spans) {
    const Column& col = frame.columns[span.column];
    const CategoricalStats& s = categorical_[span.column];
    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < s.categories.size(); ++i) index[s.categories[i]] = i;
    size_t unseen = 0;
    for (size_t r = 0; r < n; ++r) {
      size_t k = s.mode;
      if (!col.missing[r]) {
        auto it = index.find(col.categorical[r]);
        if (it == index.end()) {
          ++unseen;
        } else {
          k = it->second;
        }
      }
      out.values(static_cast<Eigen::Index>(r),
                 static_cast<Eigen::Index>(span.offset + k)) = 1.0;
    }
    if (unseen > 0) {
      spdlog::warn("column '{}': {} unseen categories mapped to mode '{}'",
                   col.name, unseen, s.Mode());
    }
  }
  out.labels.resize(n);
  for (size_t r = 0; r < n; ++r) {
    const std::string& t = frame.target[r];
    if (t == positive_label_) {
      out.labels[r] = 1;
    } else if (t == negative_label_) {
      out.labels[r] = 0;
    } else {
      throw std::invalid_argument("transform: unknown target label '" + t + "'");
    }
  }
  return out;
}

TabularFrame PreprocessorModel::InverseTransform(
    const EncodedMatrix& matrix) const {
  if (static_cast<size_t>(matrix.values.cols()) != layout_.Width()) {
    throw std::invalid_argument("inverse_transform: layout mismatch");
  }
  const size_t n = matrix.NumRows();
  TabularFrame frame = TabularFrame::Empty(schema_);
  for (auto& col : frame.columns) {
    col.missing.assign(n, false);
    if (col.kind == ColumnKind::kNumerical) {
      col.numeric.resize(n);
    } else {
      col.categorical.resize(n);
    }
  }
  for (size_t j = 0; j < layout_.numeric_columns.size(); ++j) {
    const size_t c = layout_.numeric_columns[j];
    const NumericStats& s = numeric_[c];
    for (size_t r = 0; r < n; ++r) {
      const double x = matrix.values(static_cast<Eigen::Index>(r),
                                     static_cast<Eigen::Index>(j));
      frame.columns[c].numeric[r] = s.constant ? s.min : x * (s.max - s.min) + s.min;
    }
  }
  std::vector<double> buf;
  for (const auto& span : layout_.spans) {
    const CategoricalStats& s = categorical_[span.column];
    buf.resize(span.width);
    for (size_t r = 0; r < n; ++r) {
      for (size_t k = 0; k < span.width; ++k) {
        buf[k] = matrix.values(static_cast<Eigen::Index>(r),
                               static_cast<Eigen::Index>(span.offset + k));
      }
      frame.columns[span.column].categorical[r] =
          s.categories[SpanArgmax(buf.data(), span.width)];
    }
  }
  frame.target.resize(n);
  for (size_t r = 0; r < n; ++r) {
    frame.target[r] = (r < matrix.labels.size() && matrix.labels[r] == 1)
                          ? positive_label_
                          : negative_label_;
  }
  return frame;
}

MixedMatrix ToMixed(const EncodedMatrix& matrix) {
  const EncodedLayout& layout = matrix.layout;
  MixedMatrix mixed;
  const Eigen::Index n = matrix.values.rows();
  mixed.numeric = matrix.values.leftCols(
      static_cast<Eigen::Index>(layout.NumericWidth()));
  mixed.codes.resize(n, static_cast<Eigen::Index>(layout.spans.size()));
  std::vector<double> buf;
  for (size_t s = 0; s < layout.spans.size(); ++s) {
    const auto& span = layout.spans[s];
    mixed.cardinalities.push_back(span.width);
    buf.resize(span.width);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (size_t k = 0; k < span.width; ++k) {
        buf[k] = matrix.values(r, static_cast<Eigen::Index>(span.offset + k));
      }
      mixed.codes(r, static_cast<Eigen::Index>(s)) =
          static_cast<int>(SpanArgmax(buf.data(), span.width));
    }
  }
  mixed.labels = matrix.labels;
  return mixed;
}

EncodedMatrix FromMixed(const MixedMatrix& mixed, const EncodedLayout& layout) {
  EncodedMatrix out;
  out.layout = layout;
  const Eigen::Index n = mixed.numeric.rows();
  out.values = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(layout.Width()));
  out.values.leftCols(static_cast<Eigen::Index>(layout.NumericWidth())) =
      mixed.numeric;
  for (size_t s = 0; s < layout.spans.size(); ++s) {
    const auto& span = layout.spans[s];
    for (Eigen::Index r = 0; r < n; ++r) {
      const int k = mixed.codes(r, static_cast<Eigen::Index>(s));
      if (k < 0 || static_cast<size_t>(k) >= span.width) {
        throw std::invalid_argument("FromMixed: category code out of range");
      }
      out.values(r, static_cast<Eigen::Index>(span.offset + k)) = 1.0;
    }
  }
  out.labels = mixed.labels;
  return out;
}

MixedMatrix PreprocessorModel::ToMixed(const EncodedMatrix& matrix) const {
  return tabular::ToMixed(matrix);
}

EncodedMatrix PreprocessorModel::FromMixed(const MixedMatrix& mixed) const {
  return tabular::FromMixed(mixed, layout_);
}

nlohmann::json PreprocessorModel::ToJson() const {
  nlohmann::json j;
  j["schema"] = schema_.ToJson();
  j["positive_label"] = positive_label_;
  j["negative_label"] = negative_label_;
  nlohmann::json cols = nlohmann::json::array();
  for (size_t c = 0; c < schema_.columns.size(); ++c) {
    if (schema_.columns[c].kind == ColumnKind::kNumerical) {
      const auto& s = numeric_[c];
      cols.push_back({{"mean", s.mean}, {"min", s.min}, {"max", s.max},
                      {"constant", s.constant}});
    } else {
      const auto& s = categorical_[c];
      cols.push_back({{"categories", s.categories}, {"mode", s.mode}});
    }
  }
  j["columns"] = cols;
  return j;
}

PreprocessorModel PreprocessorModel::FromJson(const nlohmann::json& j) {
  PreprocessorModel m;
  m.schema_ = DatasetSchema::FromJson(j.at("schema"));
  m.positive_label_ = j.at("positive_label").get<std::string>();
  m.negative_label_ = j.at("negative_label").get<std::string>();
  const auto& cols = j.at("columns");
  if (cols.size() != m.schema_.columns.size()) {
    throw std::invalid_argument("preprocessor json: column count mismatch");
  }
  m.numeric_.resize(cols.size());
  m.categorical_.resize(cols.size());
  for (size_t c = 0; c < cols.size(); ++c) {
    if (m.schema_.columns[c].kind == ColumnKind::kNumerical) {
      auto& s = m.numeric_[c];
      s.mean = cols[c].at("mean").get<double>();
      s.min = cols[c].at("min").get<double>();
      s.max = cols[c].at("max").get<double>();
      s.constant = cols[c].at("constant").get<bool>();
    } else {
      auto& s = m.categorical_[c];
      s.categories = cols[c].at("categories").get<std::vector<std::string>>();
      s.mode = cols[c].at("mode").get<size_t>();
      if (s.mode >= s.categories.size()) {
        throw std::invalid_argument("preprocessor json: mode out of range");
      }
    }
  }
  m.BuildLayout();
  return m;
}

}  // namespace imbal::tabular
