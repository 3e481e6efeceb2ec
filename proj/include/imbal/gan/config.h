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


#ifndef IMBAL_GAN_CONFIG_H_
#define IMBAL_GAN_CONFIG_H_

#include <string>
#include <vector>

#include "json.hpp"

namespace imbal::gan {

enum class LossMode { kWganGp, kVanilla, kVanillaGp };

const char* LossModeName(LossMode mode);
LossMode ParseLossMode(const std::string& name);

struct GanConfig {
  int noise_dim = 30;  // z ~ U[0, 1]^noise_dim
  double gumbel_tau = 0.66;
  double gp_weight = 15.0;
  double ac_cap = 0.3;
  double ac_scale_ratio = 0.1;
  int critic_updates_per_gen = 3;
  int batch_size = 64;
  int epochs = 300;
  std::vector<int> gen_layers{128, 64};
  int gen_crosslayers = 1;
  // Adds a hidden layer (width of the last generator layer) right before the
  // numeric head.
  bool extra_numeric_layer = false;
  int self_cond_dim = 16;
  std::vector<int> disc_layers{128, 64, 32};
  int disc_crosslayers = 2;
  std::vector<int> ac_layers{64, 64};
  int ac_crosslayers = 2;
  int ac_pretrain_epochs = 30;
  double leaky_slope = 0.2;
  double learning_rate = 5e-4;
  double beta1 = 0.0;
  double beta2 = 0.9;
  double adam_eps = 1e-8;
  double numeric_noise_sd = 0.01;
  LossMode loss_mode = LossMode::kWganGp;
  bool use_ac = true;
  // One-hot columns are generated and critiqued as plain numerics.
  bool naive_categorical = false;

  void Validate() const;
  nlohmann::json ToJson() const;
  // Missing keys keep their defaults.
  static GanConfig FromJson(const nlohmann::json& j);
  bool operator==(const GanConfig&) const = default;
};

// min(ceil(k / 3), 20).
int EmbeddingDim(size_t categories);

}  // namespace imbal::gan

#endif  // IMBAL_GAN_CONFIG_H_
