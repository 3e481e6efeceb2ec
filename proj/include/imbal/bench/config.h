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


#ifndef IMBAL_BENCH_CONFIG_H_
#define IMBAL_BENCH_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imbal/bench/toy_data.h"
#include "imbal/eval/classifiers.h"
#include "imbal/gan/config.h"
#include "imbal/gan/grid_search.h"
#include "imbal/resample/oversample.h"
#include "imbal/tabular/schema.h"
#include "json.hpp"

namespace imbal::bench {

// A dataset is either a schema with a file behind it or the generated toy
// table, which needs no file.
struct DatasetEntry {
  tabular::DatasetSchema schema;
  std::optional<ToyDataSpec> toy;

  const std::string& name() const { return schema.name; }
};

// Switches removed from the full cWGAN. An empty set is the full model.
struct Ablation {
  bool vanilla_loss = false;       // "wgan_gp": vanilla GAN loss instead
  bool drop_ac = false;            // "ac": no auxiliary classifier loss
  bool naive_categorical = false;  // "categorical": one-hot columns as numerics

  bool Empty() const { return !vanilla_loss && !drop_ac && !naive_categorical; }
  // "full", or the dropped elements joined by '+', e.g. "wgan_gp+ac".
  std::string Name() const;
  // Parses one --drop value: wgan_gp, ac or categorical.
  void Drop(const std::string& element);
  gan::GanConfig Apply(gan::GanConfig config) const;
  bool operator==(const Ablation&) const = default;
};

// The standard variants: vanilla loss, no AC, both, naive categoricals.
std::vector<Ablation> StandardAblations();

struct BenchmarkConfig {
  std::vector<DatasetEntry> datasets;
  std::vector<resample::OversampleMethod> methods;
  std::vector<eval::ClassifierKind> classifiers{eval::kAllClassifiers.begin(),
                                                eval::kAllClassifiers.end()};
  std::vector<uint64_t> seeds{1, 2, 3, 4, 5, 6};
  double test_fraction = 0.1;
  int bootstrap = 100;
  std::string output_dir = "results";
  gan::GanConfig gan;
  // Without a grid the cWGAN trains once with `gan` as given.
  std::optional<gan::GridSpec> grid;
  Ablation ablation;

  // Throws std::invalid_argument on an unusable configuration.
  void Validate() const;
  nlohmann::json ToJson() const;
  // Relative dataset schema paths resolve against `base_dir`.
  static BenchmarkConfig FromJson(const nlohmann::json& j, const std::string& base_dir = "");
  // Hash of everything that can change results; output_dir is excluded.
  uint64_t Hash() const;
};

BenchmarkConfig LoadBenchmarkConfig(const std::string& path);

}  // namespace imbal::bench

#endif  // IMBAL_BENCH_CONFIG_H_
