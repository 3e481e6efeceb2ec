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


#include "imbal/eval/splits.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "imbal/common/random.h"

namespace imbal::eval {
namespace {

// Row indices per label, in label order then row order.
std::map<int, std::vector<size_t>> ByClass(const std::vector<int>& labels) {
  std::map<int, std::vector<size_t>> rows;
  for (size_t i = 0; i < labels.size(); ++i) rows[labels[i]].push_back(i);
  return rows;
}

}  // namespace

TrainTestSplit StratifiedSplit(const std::vector<int>& labels,
                               double test_fraction, uint64_t seed) {
  if (!(test_fraction > 0 && test_fraction < 1)) {
    throw std::invalid_argument("test fraction must lie in (0, 1)");
  }
  Rng rng(seed);
  TrainTestSplit split;
  for (auto& [label, rows] : ByClass(labels)) {
    rng.Shuffle(rows);
    auto n_test = static_cast<size_t>(std::llround(test_fraction * static_cast<double>(rows.size())));
    if (rows.size() >= 2) n_test = std::clamp<size_t>(n_test, 1, rows.size() - 1);
    split.test.insert(split.test.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train.insert(split.train.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_test), rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::vector<size_t>> StratifiedFolds(const std::vector<int>& labels,
                                                 size_t k, uint64_t seed) {
  if (k < 2) throw std::invalid_argument("need at least two folds");
  Rng rng(seed);
  std::vector<std::vector<size_t>> folds(k);
  size_t next = 0;  // continue dealing where the previous class stopped
  for (auto& [label, rows] : ByClass(labels)) {
    if (rows.size() < k) {
      throw std::invalid_argument("class " + std::to_string(label) + " has fewer rows than folds");
    }
    rng.Shuffle(rows);
    for (size_t row : rows) {
      folds[next].push_back(row);
      next = (next + 1) % k;
    }
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

std::vector<size_t> Complement(const std::vector<size_t>& held_out, size_t n) {
  std::vector<size_t> out;
  out.reserve(n - std::min(n, held_out.size()));
  size_t j = 0;
  for (size_t i = 0; i < n; ++i) {
    if (j < held_out.size() && held_out[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace imbal::eval
