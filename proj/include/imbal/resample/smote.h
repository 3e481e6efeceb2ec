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


#ifndef IMBAL_RESAMPLE_SMOTE_H_
#define IMBAL_RESAMPLE_SMOTE_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "imbal/common/random.h"
#include "imbal/resample/neighbors.h"

namespace imbal::resample {

// Interpolated rows with their parents. base[i] and neighbour[i] index rows
// of the matrix the generator was given.
struct Synthetic {
  Matrix rows;
  std::vector<size_t> base;
  std::vector<size_t> neighbour;
  // B-SMOTE / ADASYN found no eligible seed and ran plain SMOTE instead.
  bool fell_back = false;
};

// n_new rows x_i + eps * (x_j - x_i): x_i uniform over the rows of
// `minority`, x_j uniform over its k nearest minority neighbours, eps ~ U[0,1).
// Requires at least k + 1 rows.
Synthetic Smote(const Matrix& minority, size_t n_new, size_t k, Rng& rng);

enum class BorderlineKind { kSafe, kDanger, kNoise };

// Classifies a minority point by the number of majority rows among its m
// nearest neighbours: share < 1/2 is safe, share 1 is noise.
BorderlineKind ClassifyBorderline(size_t majority_neighbours, size_t m);

// Borderline SMOTE on the full matrix x. Danger points among the
// `minority_label` rows are drawn uniformly as bases and interpolated towards
// one of their k nearest minority neighbours. With no danger points it
// falls back to Smote over all minority rows.
Synthetic BorderlineSmote(const Matrix& x, const std::vector<int>& labels,
                          int minority_label, size_t n_new, size_t k, size_t m,
                          Rng& rng);

// Splits `budget` proportionally to non-negative weights: floors first, then
// one extra sample per point in decreasing weight order (ties to the lower
// position) until the budget is used.
std::vector<size_t> AdasynAllocation(const std::vector<double>& weights,
                                     size_t budget);

// ADASYN on the full matrix x. Minority point i gets weight equal to the
// majority share among its k nearest rows of x, the budget is allocated by
// AdasynAllocation and each sample interpolates towards one of the k nearest
// minority neighbours. Falls back to Smote when every weight is zero.
Synthetic Adasyn(const Matrix& x, const std::vector<int>& labels,
                 int minority_label, size_t n_new, size_t k, Rng& rng);

// Median over continuous columns of the population standard deviation.
// Zero columns give 1, so each nominal mismatch then counts one unit.
double MedianStd(const Matrix& numeric);

// sqrt(|a_num - b_num|^2 + med_std^2 * #{differing nominal codes}).
double SmoteNcDistance(const Eigen::RowVectorXd& a_num,
                       const Eigen::RowVectorXi& a_codes,
                       const Eigen::RowVectorXd& b_num,
                       const Eigen::RowVectorXi& b_codes, double med_std);

// Most frequent value, ties to the smallest code.
int ModeCode(const std::vector<int>& codes);

struct MixedSynthetic {
  Matrix numeric;
  Eigen::MatrixXi codes;
  std::vector<size_t> base;
  std::vector<size_t> neighbour;
  std::vector<std::vector<size_t>> neighbourhood;  // k rows per sample
};

// SMOTENC over minority rows in mixed space. Neighbours use SmoteNcDistance
// with MedianStd(numeric); continuous parts are interpolated as in Smote and
// each nominal column takes the mode of the base row's k neighbours.
// Throws when there are no nominal columns or fewer than k + 1 rows.
MixedSynthetic SmoteNc(const Matrix& numeric, const Eigen::MatrixXi& codes,
                       size_t n_new, size_t k, Rng& rng);

}  // namespace imbal::resample

#endif  // IMBAL_RESAMPLE_SMOTE_H_
