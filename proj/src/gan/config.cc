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


#include "imbal/gan/config.h"

#include <algorithm>
#include <stdexcept>

namespace imbal::gan {

const char* LossModeName(LossMode mode) {
  switch (mode) {
    case LossMode::kWganGp:
      return "wgan_gp";
    case LossMode::kVanilla:
      return "vanilla";
    case LossMode::kVanillaGp:
      return "vanilla_gp";
  }
  return "?";
}

LossMode ParseLossMode(const std::string& name) {
  if (name == "wgan_gp") return LossMode::kWganGp;
  if (name == "vanilla") return LossMode::kVanilla;
  if (name == "vanilla_gp") return LossMode::kVanillaGp;
  throw std::invalid_argument("unknown loss mode '" + name +
                              "' (expected wgan_gp, vanilla or vanilla_gp)");
}

int EmbeddingDim(size_t categories) {
  return static_cast<int>(std::min<size_t>((categories + 2) / 3, 20));
}

void GanConfig::Validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0)) throw std::invalid_argument(std::string("gan config: ") + what +
                                              " must be positive");
  };
  positive(noise_dim, "noise_dim");
  positive(gumbel_tau, "gumbel_tau");
  positive(critic_updates_per_gen, "critic_updates_per_gen");
  positive(batch_size, "batch_size");
  positive(epochs, "epochs");
  positive(self_cond_dim, "self_cond_dim");
  positive(learning_rate, "learning_rate");
  if (gp_weight < 0) throw std::invalid_argument("gan config: gp_weight < 0");
  if (ac_cap < 0) throw std::invalid_argument("gan config: ac_cap < 0");
  if (ac_scale_ratio < 0) {
    throw std::invalid_argument("gan config: ac_scale_ratio < 0");
  }
  if (ac_pretrain_epochs < 0 || gen_crosslayers < 0 || disc_crosslayers < 0 ||
      ac_crosslayers < 0) {
    throw std::invalid_argument("gan config: negative count");
  }
  if (numeric_noise_sd < 0) {
    throw std::invalid_argument("gan config: numeric_noise_sd < 0");
  }
  if (beta1 < 0 || beta1 >= 1 || beta2 < 0 || beta2 >= 1) {
    throw std::invalid_argument("gan config: Adam betas must lie in [0, 1)");
  }
  for (const auto* layers : {&gen_layers, &disc_layers, &ac_layers}) {
    if (layers->empty()) throw std::invalid_argument("gan config: empty layer list");
    for (int w : *layers) positive(w, "layer width");
  }
}

nlohmann::json GanConfig::ToJson() const {
  return {
      {"noise_dim", noise_dim},
      {"gumbel_tau", gumbel_tau},
      {"gp_weight", gp_weight},
      {"ac_cap", ac_cap},
      {"ac_scale_ratio", ac_scale_ratio},
      {"critic_updates_per_gen", critic_updates_per_gen},
      {"batch_size", batch_size},
      {"epochs", epochs},
      {"gen_layers", gen_layers},
      {"gen_crosslayers", gen_crosslayers},
      {"extra_numeric_layer", extra_numeric_layer},
      {"self_cond_dim", self_cond_dim},
      {"disc_layers", disc_layers},
      {"disc_crosslayers", disc_crosslayers},
      {"ac_layers", ac_layers},
      {"ac_crosslayers", ac_crosslayers},
      {"ac_pretrain_epochs", ac_pretrain_epochs},
      {"leaky_slope", leaky_slope},
      {"learning_rate", learning_rate},
      {"beta1", beta1},
      {"beta2", beta2},
      {"adam_eps", adam_eps},
      {"numeric_noise_sd", numeric_noise_sd},
      {"loss_mode", LossModeName(loss_mode)},
      {"use_ac", use_ac},
      {"naive_categorical", naive_categorical},
  };
}

GanConfig GanConfig::FromJson(const nlohmann::json& j) {
  GanConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "noise_dim") c.noise_dim = value.get<int>();
    else if (key == "gumbel_tau") c.gumbel_tau = value.get<double>();
    else if (key == "gp_weight") c.gp_weight = value.get<double>();
    else if (key == "ac_cap") c.ac_cap = value.get<double>();
    else if (key == "ac_scale_ratio") c.ac_scale_ratio = value.get<double>();
    else if (key == "critic_updates_per_gen") c.critic_updates_per_gen = value.get<int>();
    else if (key == "batch_size") c.batch_size = value.get<int>();
    else if (key == "epochs") c.epochs = value.get<int>();
    else if (key == "gen_layers") c.gen_layers = value.get<std::vector<int>>();
    else if (key == "gen_crosslayers") c.gen_crosslayers = value.get<int>();
    else if (key == "extra_numeric_layer") c.extra_numeric_layer = value.get<bool>();
    else if (key == "self_cond_dim") c.self_cond_dim = value.get<int>();
    else if (key == "disc_layers") c.disc_layers = value.get<std::vector<int>>();
    else if (key == "disc_crosslayers") c.disc_crosslayers = value.get<int>();
    else if (key == "ac_layers") c.ac_layers = value.get<std::vector<int>>();
    else if (key == "ac_crosslayers") c.ac_crosslayers = value.get<int>();
    else if (key == "ac_pretrain_epochs") c.ac_pretrain_epochs = value.get<int>();
    else if (key == "leaky_slope") c.leaky_slope = value.get<double>();
    else if (key == "learning_rate") c.learning_rate = value.get<double>();
    else if (key == "beta1") c.beta1 = value.get<double>();
    else if (key == "beta2") c.beta2 = value.get<double>();
    else if (key == "adam_eps") c.adam_eps = value.get<double>();
    else if (key == "numeric_noise_sd") c.numeric_noise_sd = value.get<double>();
    else if (key == "loss_mode") c.loss_mode = ParseLossMode(value.get<std::string>());
    else if (key == "use_ac") c.use_ac = value.get<bool>();
    else if (key == "naive_categorical") c.naive_categorical = value.get<bool>();
    else throw std::invalid_argument("gan config: unknown key '" + key + "'");
  }
  c.Validate();
  return c;
}

}  // namespace imbal::gan
