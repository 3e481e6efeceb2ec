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


#include "imbal/resample/smote.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace imbal::resample {
namespace {

void RequireRows(Eigen::Index rows, size_t k, const char* what) {
  if (k == 0) throw std::invalid_argument(std::string(what) + ": k must be positive");
  if (static_cast<size_t>(rows) < k + 1) {
    throw std::invalid_argument(std::string(what) + ": needs at least k + 1 = " +
                                std::to_string(k + 1) + " minority rows, got " +
                                std::to_string(rows));
  }
}

std::vector<size_t> RowsWithLabel(const std::vector<int>& labels, int label) {
  std::vector<size_t> rows;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) rows.push_back(i);
  }
  return rows;
}

Matrix Gather(const Matrix& x, const std::vector<size_t>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

// Writes sample number out.base.size(): the base row is given, the neighbour
// and the gap are drawn from rng in that order.
void AppendSample(const Matrix& points, const std::vector<std::vector<size_t>>& nn,
                  size_t i, Synthetic& out, Rng& rng) {
  const size_t j = nn[i][rng.Index(nn[i].size())];
  const double gap = rng.Uniform();
  const auto bi = static_cast<Eigen::Index>(i);
  out.rows.row(static_cast<Eigen::Index>(out.base.size())) =
      points.row(bi) + gap * (points.row(static_cast<Eigen::Index>(j)) - points.row(bi));
  out.base.push_back(i);
  out.neighbour.push_back(j);
}

Synthetic Allocate(const Matrix& points, size_t n_new) {
  Synthetic out;
  out.rows.resize(static_cast<Eigen::Index>(n_new), points.cols());
  out.base.reserve(n_new);
  out.neighbour.reserve(n_new);
  return out;
}

// Re-expresses parent positions in the minority submatrix as rows of x.
void MapParents(Synthetic& s, const std::vector<size_t>& minority_rows) {
  for (size_t& b : s.base) b = minority_rows[b];
  for (size_t& n : s.neighbour) n = minority_rows[n];
}

size_t MajorityAmongNearest(const Matrix& x, const std::vector<int>& labels,
                            int minority_label, size_t row, size_t k) {
  size_t count = 0;
  for (size_t j : KNearest(x, x.row(static_cast<Eigen::Index>(row)), k, row)) {
    count += labels[j] != minority_label;
  }
  return count;
}

}  // namespace

Synthetic Smote(const Matrix& minority, size_t n_new, size_t k, Rng& rng) {
  RequireRows(minority.rows(), k, "smote");
  const auto nn = SelfNeighbors(minority, k);
  Synthetic out = Allocate(minority, n_new);
  for (size_t s = 0; s < n_new; ++s) {
    AppendSample(minority, nn, rng.Index(static_cast<size_t>(minority.rows())), out, rng);
  }
  return out;
}

BorderlineKind ClassifyBorderline(size_t majority_neighbours, size_t m) {
  if (2 * majority_neighbours < m) return BorderlineKind::kSafe;
  if (majority_neighbours == m) return BorderlineKind::kNoise;
  return BorderlineKind::kDanger;
}

Synthetic BorderlineSmote(const Matrix& x, const std::vector<int>& labels,
                          int minority_label, size_t n_new, size_t k, size_t m,
                          Rng& rng) {
  if (m < k) throw std::invalid_argument("b-smote: m must be at least k");
  if (static_cast<size_t>(x.rows()) < m + 1) {
    throw std::invalid_argument("b-smote: needs at least m + 1 rows");
  }
  const std::vector<size_t> minority_rows = RowsWithLabel(labels, minority_label);
  const Matrix minority = Gather(x, minority_rows);
  RequireRows(minority.rows(), k, "b-smote");

  std::vector<size_t> danger;
  for (size_t i = 0; i < minority_rows.size(); ++i) {
    const size_t majority =
        MajorityAmongNearest(x, labels, minority_label, minority_rows[i], m);
    if (ClassifyBorderline(majority, m) == BorderlineKind::kDanger) danger.push_back(i);
  }
  Synthetic out;
  if (danger.empty()) {
    out = Smote(minority, n_new, k, rng);
    out.fell_back = true;
  } else {
    const auto nn = SelfNeighbors(minority, k);
    out = Allocate(minority, n_new);
    for (size_t s = 0; s < n_new; ++s) {
      AppendSample(minority, nn, danger[rng.Index(danger.size())], out, rng);
    }
  }
  MapParents(out, minority_rows);
  return out;
}

std::vector<size_t> AdasynAllocation(const std::vector<double>& weights,
                                     size_t budget) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0)) throw std::invalid_argument("adasyn: all weights are zero");
  std::vector<size_t> alloc(weights.size());
  size_t used = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) throw std::invalid_argument("adasyn: negative weight");
    alloc[i] = static_cast<size_t>(std::floor(static_cast<double>(budget) * weights[i] / total));
    used += alloc[i];
  }
  std::vector<size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return weights[a] > weights[b]; });
  for (size_t i = 0; used < budget; i = (i + 1) % order.size()) {
    if (weights[order[i]] <= 0) {
      i = order.size() - 1;  // only positive weights receive residuals
      continue;
    }
    ++alloc[order[i]];
    ++used;
  }
  return alloc;
}

Synthetic Adasyn(const Matrix& x, const std::vector<int>& labels,
                 int minority_label, size_t n_new, size_t k, Rng& rng) {
  const std::vector<size_t> minority_rows = RowsWithLabel(labels, minority_label);
  const Matrix minority = Gather(x, minority_rows);
  RequireRows(minority.rows(), k, "adasyn");

  std::vector<double> weights(minority_rows.size());
  for (size_t i = 0; i < minority_rows.size(); ++i) {
    weights[i] = static_cast<double>(
                     MajorityAmongNearest(x, labels, minority_label, minority_rows[i], k)) /
                 static_cast<double>(k);
  }
  Synthetic out;
  if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0; })) {
    out = Smote(minority, n_new, k, rng);
    out.fell_back = true;
  } else {
    const std::vector<size_t> alloc = AdasynAllocation(weights, n_new);
    const auto nn = SelfNeighbors(minority, k);
    out = Allocate(minority, n_new);
    for (size_t i = 0; i < alloc.size(); ++i) {
      for (size_t c = 0; c < alloc[i]; ++c) AppendSample(minority, nn, i, out, rng);
    }
  }
  MapParents(out, minority_rows);
  return out;
}

double MedianStd(const Matrix& numeric) {
  if (numeric.cols() == 0) return 1.0;
  std::vector<double> sds;
  for (Eigen::Index c = 0; c < numeric.cols(); ++c) {
    const double mean = numeric.col(c).mean();
    sds.push_back(std::sqrt((numeric.col(c).array() - mean).square().mean()));
  }
  std::sort(sds.begin(), sds.end());
  const size_t mid = sds.size() / 2;
  return sds.size() % 2 == 1 ? sds[mid] : 0.5 * (sds[mid - 1] + sds[mid]);
}

double SmoteNcDistance(const Eigen::RowVectorXd& a_num,
                       const Eigen::RowVectorXi& a_codes,
                       const Eigen::RowVectorXd& b_num,
                       const Eigen::RowVectorXi& b_codes, double med_std) {
  const auto mismatches = static_cast<double>((a_codes.array() != b_codes.array()).count());
  return std::sqrt((a_num - b_num).squaredNorm() + med_std * med_std * mismatches);
}

int ModeCode(const std::vector<int>& codes) {
  if (codes.empty()) throw std::invalid_argument("mode of an empty set");
  std::map<int, int> counts;
  for (int c : codes) ++counts[c];
  // std::map iterates codes in increasing order, so the first maximum wins.
  return std::max_element(counts.begin(), counts.end(),
                          [](const auto& a, const auto& b) { return a.second < b.second; })
      ->first;
}

MixedSynthetic SmoteNc(const Matrix& numeric, const Eigen::MatrixXi& codes,
                       size_t n_new, size_t k, Rng& rng) {
  if (codes.cols() == 0) {
    throw std::invalid_argument("smote_nc: no categorical columns; use smote");
  }
  if (numeric.rows() != codes.rows()) {
    throw std::invalid_argument("smote_nc: numeric and nominal row counts differ");
  }
  RequireRows(numeric.rows(), k, "smote_nc");
  const double med_std = MedianStd(numeric);
  const auto n = static_cast<size_t>(numeric.rows());

  std::map<size_t, std::vector<size_t>> cache;
  const auto neighbours = [&](size_t i) -> const std::vector<size_t>& {
    auto it = cache.find(i);
    if (it != cache.end()) return it->second;
    std::vector<double> d(n);
    const auto ri = static_cast<Eigen::Index>(i);
    for (size_t j = 0; j < n; ++j) {
      const auto rj = static_cast<Eigen::Index>(j);
      d[j] = SmoteNcDistance(numeric.row(ri), codes.row(ri), numeric.row(rj),
                             codes.row(rj), med_std);
    }
    return cache.emplace(i, KSmallest(d, k, i)).first->second;
  };

  MixedSynthetic out;
  out.numeric.resize(static_cast<Eigen::Index>(n_new), numeric.cols());
  out.codes.resize(static_cast<Eigen::Index>(n_new), codes.cols());
  std::vector<int> column;
  for (size_t s = 0; s < n_new; ++s) {
    const size_t i = rng.Index(n);
    const std::vector<size_t>& nn = neighbours(i);
    const size_t j = nn[rng.Index(nn.size())];
    const double gap = rng.Uniform();
    const auto r = static_cast<Eigen::Index>(s);
    const auto bi = static_cast<Eigen::Index>(i);
    out.numeric.row(r) =
        numeric.row(bi) + gap * (numeric.row(static_cast<Eigen::Index>(j)) - numeric.row(bi));
    for (Eigen::Index c = 0; c < codes.cols(); ++c) {
      column.clear();
      for (size_t q : nn) column.push_back(codes(static_cast<Eigen::Index>(q), c));
      out.codes(r, c) = ModeCode(column);
    }
    out.base.push_back(i);
    out.neighbour.push_back(j);
    out.neighbourhood.push_back(nn);
  }
  return out;
}

}  // namespace imbal::resample
