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


#ifndef IMBAL_EVAL_SPLITS_H_
#define IMBAL_EVAL_SPLITS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace imbal::eval {

struct TrainTestSplit {
  std::vector<size_t> train;  // ascending row indices
  std::vector<size_t> test;
};

// Per class, round(class_size * test_fraction) rows go to the test side,
// at least one when the class has two or more rows. Rows are chosen by a
// seeded shuffle.
TrainTestSplit StratifiedSplit(const std::vector<int>& labels,
                               double test_fraction, uint64_t seed);

// k folds with class proportions preserved: each class is shuffled and dealt
// round-robin. Returns the held-out rows of every fold, ascending. Requires
// every class to have at least k rows.
std::vector<std::vector<size_t>> StratifiedFolds(const std::vector<int>& labels,
                                                 size_t k, uint64_t seed);

// Rows of [0, n) not in `held_out` (which must be ascending).
std::vector<size_t> Complement(const std::vector<size_t>& held_out, size_t n);

}  // namespace imbal::eval

#endif  // IMBAL_EVAL_SPLITS_H_
