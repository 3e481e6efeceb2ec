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


#include "imbal/resample/oversample.h"

#include <algorithm>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "imbal/resample/smote.h"

namespace imbal::resample {
namespace {

std::vector<size_t> RowsWithLabel(const std::vector<int>& labels, int label) {
  std::vector<size_t> rows;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) rows.push_back(i);
  }
  return rows;
}

void AppendRows(OversampleResult& result, const Eigen::MatrixXd& rows, int label) {
  tabular::EncodedMatrix& d = result.data;
  const Eigen::Index old = d.values.rows();
  d.values.conservativeResize(old + rows.rows(), Eigen::NoChange);
  d.values.bottomRows(rows.rows()) = rows;
  d.labels.insert(d.labels.end(), static_cast<size_t>(rows.rows()), label);
  result.appended = static_cast<size_t>(rows.rows());
}

}  // namespace

std::string MethodName(MethodTag tag) {
  switch (tag) {
    case MethodTag::kNone: return "none";
    case MethodTag::kRandom: return "random";
    case MethodTag::kSmote: return "smote";
    case MethodTag::kSmoteNc: return "smote_nc";
    case MethodTag::kBSmote: return "b_smote";
    case MethodTag::kAdasyn: return "adasyn";
    case MethodTag::kCwgan: return "cwgan";
  }
  throw std::invalid_argument("unknown method tag");
}

MethodTag ParseMethod(std::string_view name) {
  for (MethodTag tag : kAllMethods) {
    if (MethodName(tag) == name) return tag;
  }
  throw std::invalid_argument("unknown oversampling method '" + std::string(name) + "'");
}

void OversampleMethod::Validate() const {
  if (k_neighbours < 1) throw std::invalid_argument("k_neighbours must be at least 1");
  if (tag == MethodTag::kBSmote && m_neighbours < k_neighbours) {
    throw std::invalid_argument("b_smote requires m_neighbours >= k_neighbours");
  }
}

int MinorityLabel(const std::vector<int>& labels) {
  const auto pos = std::count(labels.begin(), labels.end(), 1);
  return 2 * static_cast<size_t>(pos) <= labels.size() ? 1 : 0;
}

size_t ParityDeficit(const std::vector<int>& labels) {
  const auto pos = static_cast<size_t>(std::count(labels.begin(), labels.end(), 1));
  const size_t neg = labels.size() - pos;
  return pos > neg ? pos - neg : neg - pos;
}

std::vector<size_t> RandomOversampleRows(const std::vector<size_t>& minority_rows,
                                         size_t n_new, Rng& rng) {
  if (minority_rows.empty()) throw std::invalid_argument("random: no minority rows");
  std::vector<size_t> picks(n_new);
  for (size_t& p : picks) p = minority_rows[rng.Index(minority_rows.size())];
  return picks;
}

OversampleResult Oversample(const OversampleMethod& method,
                            const tabular::EncodedMatrix& train, Rng& rng) {
  method.Validate();
  const std::vector<int>& labels = train.labels;
  if (static_cast<size_t>(train.values.rows()) != labels.size()) {
    throw std::invalid_argument("oversample: row and label counts differ");
  }
  const int minority = MinorityLabel(labels);
  const std::vector<size_t> minority_rows = RowsWithLabel(labels, minority);
  if (minority_rows.empty()) {
    throw std::invalid_argument("oversample: both classes must be present");
  }
  OversampleResult result{train, 0, false};
  const size_t deficit = ParityDeficit(labels);
  if (method.tag == MethodTag::kNone || deficit == 0) return result;

  const size_t k = method.k_neighbours;
  switch (method.tag) {
    case MethodTag::kNone:
      break;
    case MethodTag::kRandom: {
      const std::vector<size_t> picks = RandomOversampleRows(minority_rows, deficit, rng);
      Eigen::MatrixXd rows(static_cast<Eigen::Index>(deficit), train.values.cols());
      for (size_t i = 0; i < deficit; ++i) {
        rows.row(static_cast<Eigen::Index>(i)) =
            train.values.row(static_cast<Eigen::Index>(picks[i]));
      }
      AppendRows(result, rows, minority);
      break;
    }
    case MethodTag::kSmote: {
      Eigen::MatrixXd pool(static_cast<Eigen::Index>(minority_rows.size()), train.values.cols());
      for (size_t i = 0; i < minority_rows.size(); ++i) {
        pool.row(static_cast<Eigen::Index>(i)) =
            train.values.row(static_cast<Eigen::Index>(minority_rows[i]));
      }
      AppendRows(result, Smote(pool, deficit, k, rng).rows, minority);
      break;
    }
    case MethodTag::kSmoteNc: {
      if (train.layout.spans.empty()) {
        throw std::invalid_argument(
            "smote_nc is not defined for datasets without categorical columns");
      }
      const tabular::MixedMatrix mixed =
          tabular::ToMixed(train.SelectRows(minority_rows));
      const MixedSynthetic synth = SmoteNc(mixed.numeric, mixed.codes, deficit, k, rng);
      tabular::MixedMatrix fresh;
      fresh.numeric = synth.numeric;
      fresh.codes = synth.codes;
      fresh.cardinalities = mixed.cardinalities;
      fresh.labels.assign(deficit, minority);
      AppendRows(result, tabular::FromMixed(fresh, train.layout).values, minority);
      break;
    }
    case MethodTag::kBSmote:
    case MethodTag::kAdasyn: {
      const Synthetic synth =
          method.tag == MethodTag::kBSmote
              ? BorderlineSmote(train.values, labels, minority, deficit, k,
                                method.m_neighbours, rng)
              : Adasyn(train.values, labels, minority, deficit, k, rng);
      if (synth.fell_back) {
        spdlog::warn("{}: no eligible seed points, falling back to smote",
                     MethodName(method.tag));
      }
      result.fell_back = synth.fell_back;
      AppendRows(result, synth.rows, minority);
      break;
    }
    case MethodTag::kCwgan:
      throw std::invalid_argument("cwgan oversampling is run through the gan module");
  }
  return result;
}

}  // namespace imbal::resample
