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


#ifndef IMBAL_RESAMPLE_NEIGHBORS_H_
#define IMBAL_RESAMPLE_NEIGHBORS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace imbal::resample {

using Matrix = Eigen::MatrixXd;

// Positions of the k smallest distances, nearest first. Equal distances go
// to the lower position; `exclude` is never returned.
std::vector<size_t> KSmallest(std::span<const double> distances, size_t k,
                              std::optional<size_t> exclude = std::nullopt);

// Exact Euclidean k-nearest rows of `pool` for every row of `pool`, the row
// itself excluded. Requires k < rows.
std::vector<std::vector<size_t>> SelfNeighbors(const Matrix& pool, size_t k);

// k nearest rows of `pool` to `query`, optionally skipping one pool row.
std::vector<size_t> KNearest(const Matrix& pool, const Eigen::RowVectorXd& query,
                             size_t k,
                             std::optional<size_t> exclude = std::nullopt);

}  // namespace imbal::resample

#endif  // IMBAL_RESAMPLE_NEIGHBORS_H_
