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


#ifndef IMBAL_GAN_GRID_SEARCH_H_
#define IMBAL_GAN_GRID_SEARCH_H_

#include <cstdint>
#include <vector>

#include "imbal/gan/config.h"
#include "imbal/tabular/preprocessor.h"
#include "json.hpp"

namespace imbal::gan {

// Candidate values crossed in the order epochs, generator layers, extra
// numeric layer (outermost first).
struct GridSpec {
  std::vector<int> epochs{300, 500};
  std::vector<std::vector<int>> gen_layers{{64}, {128, 64}};
  std::vector<bool> extra_numeric_layer{true, false};
  int folds = 3;

  size_t NumCells() const;
  void Validate() const;
  nlohmann::json ToJson() const;
  static GridSpec FromJson(const nlohmann::json& j);
  bool operator==(const GridSpec&) const = default;
};

// `base` with each grid combination applied, in canonical order.
std::vector<GanConfig> ExpandGrid(const GanConfig& base, const GridSpec& grid);

struct GridCell {
  GanConfig config;
  std::vector<double> fold_auc;
  double mean_auc = 0;
};

struct GridResult {
  std::vector<GridCell> cells;
  size_t best = 0;    // first cell with the highest mean AUC-ROC
  int trainings = 0;  // GAN fits performed

  const GanConfig& best_config() const { return cells[best].config; }
};

// Scores every cell by stratified k-fold cross-validation on `train`: fit
// the GAN on the other folds, oversample them to parity with generated
// minority rows, fit the fixed random forest and take AUC-ROC on the held-out
// fold. Every cell is trained and scored, even in a one-cell grid.
GridResult GridSearch(const tabular::EncodedMatrix& train, const GanConfig& base,
                      const GridSpec& grid, uint64_t seed);

}  // namespace imbal::gan

#endif  // IMBAL_GAN_GRID_SEARCH_H_
