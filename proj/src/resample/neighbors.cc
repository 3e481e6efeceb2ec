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


#include "imbal/resample/neighbors.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace imbal::resample {

std::vector<size_t> KSmallest(std::span<const double> distances, size_t k,
                              std::optional<size_t> exclude) {
  std::vector<size_t> order;
  order.reserve(distances.size());
  for (size_t i = 0; i < distances.size(); ++i) {
    if (i != exclude) order.push_back(i);
  }
  if (k > order.size()) {
    throw std::invalid_argument("k-nearest: k exceeds the candidate count");
  }
  const auto closer = [&](size_t a, size_t b) {
    return distances[a] < distances[b] || (distances[a] == distances[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), closer);
  order.resize(k);
  return order;
}

std::vector<size_t> KNearest(const Matrix& pool, const Eigen::RowVectorXd& query,
                             size_t k, std::optional<size_t> exclude) {
  const Eigen::VectorXd d2 = (pool.rowwise() - query).rowwise().squaredNorm();
  return KSmallest({d2.data(), static_cast<size_t>(d2.size())}, k, exclude);
}

std::vector<std::vector<size_t>> SelfNeighbors(const Matrix& pool, size_t k) {
  std::vector<std::vector<size_t>> out(static_cast<size_t>(pool.rows()));
  for (Eigen::Index r = 0; r < pool.rows(); ++r) {
    out[static_cast<size_t>(r)] =
        KNearest(pool, pool.row(r), k, static_cast<size_t>(r));
  }
  return out;
}

}  // namespace imbal::resample
