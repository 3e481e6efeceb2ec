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


#include "imbal/gan/grid_search.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include <spdlog/spdlog.h>

#include "imbal/common/random.h"
#include "imbal/eval/classifiers.h"
#include "imbal/eval/metrics.h"
#include "imbal/eval/splits.h"
#include "imbal/gan/sampling.h"
#include "imbal/gan/trainer.h"

namespace imbal::gan {

size_t GridSpec::NumCells() const {
  return epochs.size() * gen_layers.size() * extra_numeric_layer.size();
}

void GridSpec::Validate() const {
  if (NumCells() == 0) throw std::invalid_argument("grid search: empty grid");
  if (folds < 2) throw std::invalid_argument("grid search: need at least two folds");
  for (int e : epochs) {
    if (e < 1) throw std::invalid_argument("grid search: epochs must be positive");
  }
  for (const auto& layers : gen_layers) {
    if (layers.empty()) throw std::invalid_argument("grid search: empty generator stack");
  }
}

nlohmann::json GridSpec::ToJson() const {
  return {{"epochs", epochs},
          {"gen_layers", gen_layers},
          {"extra_numeric_layer", extra_numeric_layer},
          {"folds", folds}};
}

GridSpec GridSpec::FromJson(const nlohmann::json& j) {
  GridSpec g;
  if (j.contains("epochs")) g.epochs = j.at("epochs").get<std::vector<int>>();
  if (j.contains("gen_layers")) {
    g.gen_layers = j.at("gen_layers").get<std::vector<std::vector<int>>>();
  }
  if (j.contains("extra_numeric_layer")) {
    g.extra_numeric_layer = j.at("extra_numeric_layer").get<std::vector<bool>>();
  }
  if (j.contains("folds")) g.folds = j.at("folds").get<int>();
  g.Validate();
  return g;
}

std::vector<GanConfig> ExpandGrid(const GanConfig& base, const GridSpec& grid) {
  std::vector<GanConfig> cells;
  for (int epochs : grid.epochs) {
    for (const auto& layers : grid.gen_layers) {
      for (bool extra : grid.extra_numeric_layer) {
        GanConfig c = base;
        c.epochs = epochs;
        c.gen_layers = layers;
        c.extra_numeric_layer = extra;
        cells.push_back(c);
      }
    }
  }
  return cells;
}

GridResult GridSearch(const tabular::EncodedMatrix& train, const GanConfig& base,
                      const GridSpec& grid, uint64_t seed) {
  grid.Validate();
  const auto folds = eval::StratifiedFolds(train.labels, static_cast<size_t>(grid.folds),
                                           DeriveSeed(seed, "grid/folds"));
  GridResult result;
  const std::vector<GanConfig> configs = ExpandGrid(base, grid);
  for (size_t c = 0; c < configs.size(); ++c) {
    GridCell cell{configs[c], {}, 0};
    for (size_t f = 0; f < folds.size(); ++f) {
      const uint64_t cell_seed = DeriveSeed(seed, "grid/" + std::to_string(c) + "/" + std::to_string(f));
      tabular::EncodedMatrix fit = train.SelectRows(eval::Complement(folds[f], train.NumRows()));
      const tabular::EncodedMatrix held_out = train.SelectRows(folds[f]);
      const TrainedGan gan = TrainCwgan(fit, cell.config, DeriveSeed(cell_seed, "train"));
      ++result.trainings;
      const auto pos = static_cast<size_t>(std::count(fit.labels.begin(), fit.labels.end(), 1));
      const size_t neg = fit.NumRows() - pos;
      if (neg > pos) {
        Rng sample_rng(DeriveSeed(cell_seed, "sample"));
        fit.Append(SampleMinorityEncoded(gan, neg - pos, sample_rng));
      }
      const Eigen::VectorXd scores =
          eval::FitPredict(eval::ClassifierKind::kRandomForest, fit.values, fit.labels,
                           held_out.values, DeriveSeed(cell_seed, "forest"));
      cell.fold_auc.push_back(eval::AucRoc(scores, held_out.labels));
    }
    cell.mean_auc = std::accumulate(cell.fold_auc.begin(), cell.fold_auc.end(), 0.0) /
                    static_cast<double>(cell.fold_auc.size());
    spdlog::debug("grid cell {}: mean AUC-ROC {:.4f}", c, cell.mean_auc);
    result.cells.push_back(std::move(cell));
  }
  for (size_t c = 1; c < result.cells.size(); ++c) {
    if (result.cells[c].mean_auc > result.cells[result.best].mean_auc) result.best = c;
  }
  return result;
}

}  // namespace imbal::gan
