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


#include "imbal/gan/networks.h"

#include <stdexcept>
#include <string>

#include "imbal/gan/losses.h"

namespace imbal::gan {
namespace {

Eigen::Index NumericWidth(const tabular::EncodedLayout& layout) {
  return static_cast<Eigen::Index>(layout.NumericWidth());
}

}  // namespace

Tensor Generator::Output::Encoded() const {
  std::vector<Tensor> parts;
  if (numeric.defined()) parts.push_back(numeric);
  for (const auto& c : categorical) parts.push_back(c);
  return nn::ConcatCols(parts);
}

Generator::Generator(const tabular::EncodedLayout& layout,
                     const GanConfig& config, Rng& init_rng)
    : layout_(layout), config_(config) {
  const Eigen::Index input = config.noise_dim + 1;
  Eigen::Index width = input;
  for (size_t i = 0; i < config.gen_layers.size(); ++i) {
    hidden_.push_back(nn::Linear::Create(store_, "gen.hidden" + std::to_string(i),
                                         width, config.gen_layers[i], init_rng));
    width = config.gen_layers[i];
  }
  for (int i = 0; i < config.gen_crosslayers; ++i) {
    cross_.push_back(nn::CrossLayer::Create(
        store_, "gen.cross" + std::to_string(i), input, init_rng));
  }
  const Eigen::Index joint = width + (cross_.empty() ? 0 : input);
  const Eigen::Index last_hidden = config.gen_layers.back();

  Eigen::Index numeric_out = NumericWidth(layout);
  Eigen::Index numeric_in = joint;
  if (config.naive_categorical) {
    numeric_out = static_cast<Eigen::Index>(layout.Width());
  } else {
    Eigen::Index embedded = 0;
    for (size_t s = 0; s < layout.spans.size(); ++s) {
      const auto k = static_cast<Eigen::Index>(layout.spans[s].width);
      cat_heads_.push_back(nn::Linear::Create(
          store_, "gen.cat_head" + std::to_string(s), joint, k, init_rng));
    }
    if (numeric_out > 0 && !layout.spans.empty()) {
      for (size_t s = 0; s < layout.spans.size(); ++s) {
        const auto k = static_cast<Eigen::Index>(layout.spans[s].width);
        const int d = EmbeddingDim(layout.spans[s].width);
        cond_embed_.push_back(nn::Linear::Create(
            store_, "gen.cond_embed" + std::to_string(s), k, d, init_rng,
            /*with_bias=*/false));
        embedded += d;
      }
      cond_reduce_ = nn::Linear::Create(store_, "gen.cond_reduce", embedded,
                                        config.self_cond_dim, init_rng);
      numeric_in += config.self_cond_dim;
    }
  }
  if (numeric_out > 0) {
    if (config.extra_numeric_layer) {
      extra_ = nn::Linear::Create(store_, "gen.numeric_extra", numeric_in,
                                  last_hidden, init_rng);
      numeric_in = last_hidden;
    }
    numeric_head_ = nn::Linear::Create(store_, "gen.numeric_head", numeric_in,
                                       numeric_out, init_rng);
  }
}

Matrix Generator::SampleNoise(Eigen::Index n, Rng& rng) const {
  Matrix z(n, config_.noise_dim);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) z(r, c) = rng.Uniform();
  }
  return z;
}

std::vector<Matrix> Generator::SampleGumbel(Eigen::Index n, Rng& rng) const {
  std::vector<Matrix> out;
  out.reserve(cat_heads_.size());
  for (const auto& head : cat_heads_) {
    Matrix g(n, head.out());
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = rng.Gumbel();
    }
    out.push_back(std::move(g));
  }
  return out;
}

Generator::Output Generator::Forward(const Tensor& z, const Tensor& y,
                                     Rng& rng) const {
  return ForwardWithNoise(z, y, SampleGumbel(z.rows(), rng));
}

Generator::Output Generator::ForwardWithNoise(
    const Tensor& z, const Tensor& y, const std::vector<Matrix>& gumbel,
    const std::vector<Matrix>* self_cond) const {
  if (z.cols() != config_.noise_dim || y.cols() != 1 || y.rows() != z.rows()) {
    throw std::invalid_argument("generator: bad input shape");
  }
  if (gumbel.size() != cat_heads_.size()) {
    throw std::invalid_argument("generator: one Gumbel block per span expected");
  }
  const Tensor x0 = nn::ConcatCols(std::vector<Tensor>{z, y});
  Tensor h = x0;
  for (const auto& layer : hidden_) h = nn::LeakyRelu(layer(h), config_.leaky_slope);
  std::vector<Tensor> joint_parts{h};
  if (!cross_.empty()) {
    Tensor c = x0;
    for (const auto& layer : cross_) c = layer(x0, c);
    joint_parts.push_back(c);
  }
  const Tensor joint = nn::ConcatCols(joint_parts);

  Output out;
  for (size_t s = 0; s < cat_heads_.size(); ++s) {
    out.categorical.push_back(
        GumbelSoftmax(cat_heads_[s](joint), config_.gumbel_tau, gumbel[s]));
  }
  if (numeric_head_) {
    std::vector<Tensor> parts{joint};
    if (cond_reduce_) {
      // Self-conditioning: no gradient flows back into the categorical heads.
      std::vector<Tensor> embedded;
      for (size_t s = 0; s < cond_embed_.size(); ++s) {
        const Tensor cat = self_cond != nullptr
                               ? nn::Constant(self_cond->at(s))
                               : nn::Detach(out.categorical[s]);
        embedded.push_back(cond_embed_[s](cat));
      }
      parts.push_back(nn::LeakyRelu((*cond_reduce_)(nn::ConcatCols(embedded)),
                                    config_.leaky_slope));
    }
    Tensor in = parts.size() == 1 ? parts[0] : nn::ConcatCols(parts);
    if (extra_) in = nn::LeakyRelu((*extra_)(in), config_.leaky_slope);
    out.numeric = (*numeric_head_)(in);
  }
  return out;
}

CriticSpec DiscriminatorSpec(const GanConfig& config) {
  return {config.disc_layers, config.disc_crosslayers, true,
          config.numeric_noise_sd, !config.naive_categorical,
          config.leaky_slope};
}

CriticSpec AuxClassifierSpec(const GanConfig& config) {
  return {config.ac_layers, config.ac_crosslayers, false, 0.0,
          !config.naive_categorical, config.leaky_slope};
}

CriticNetwork::CriticNetwork(const tabular::EncodedLayout& layout,
                             CriticSpec spec, Rng& init_rng, const char* name)
    : layout_(layout), spec_(std::move(spec)) {
  const std::string prefix(name);
  Eigen::Index input = 0;
  if (spec_.embed_categoricals) {
    input = NumericWidth(layout);
    for (size_t s = 0; s < layout.spans.size(); ++s) {
      const int d = EmbeddingDim(layout.spans[s].width);
      embed_.push_back(nn::Linear::Create(
          store_, prefix + ".embed" + std::to_string(s),
          static_cast<Eigen::Index>(layout.spans[s].width), d, init_rng,
          /*with_bias=*/false));
      input += d;
    }
  } else {
    input = static_cast<Eigen::Index>(layout.Width());
  }
  if (spec_.conditional) ++input;
  Eigen::Index width = input;
  for (size_t i = 0; i < spec_.layers.size(); ++i) {
    const std::string tag = prefix + ".hidden" + std::to_string(i);
    hidden_.push_back(
        nn::Linear::Create(store_, tag, width, spec_.layers[i], init_rng));
    norms_.push_back(nn::LayerNorm::Create(store_, tag + ".norm", spec_.layers[i]));
    width = spec_.layers[i];
  }
  for (int i = 0; i < spec_.crosslayers; ++i) {
    cross_.push_back(nn::CrossLayer::Create(
        store_, prefix + ".cross" + std::to_string(i), input, init_rng));
  }
  const Eigen::Index joint = width + (cross_.empty() ? 0 : input);
  head_ = nn::Linear::Create(store_, prefix + ".head", joint, 1, init_rng);
}

Eigen::Index CriticNetwork::NoiseWidth() const {
  return spec_.embed_categoricals ? NumericWidth(layout_)
                                  : static_cast<Eigen::Index>(layout_.Width());
}

Tensor CriticNetwork::EmbedSpan(size_t span, const Tensor& values) const {
  return embed_.at(span)(values);
}

Tensor CriticNetwork::Forward(const Tensor& x, const Tensor* y,
                              Rng* noise_rng) const {
  if (spec_.noise_sd > 0 && NoiseWidth() > 0) {
    if (noise_rng == nullptr) {
      throw std::invalid_argument("critic: noise enabled but no RNG supplied");
    }
    Matrix noise(x.rows(), NoiseWidth());
    for (Eigen::Index r = 0; r < noise.rows(); ++r) {
      for (Eigen::Index c = 0; c < noise.cols(); ++c) {
        noise(r, c) = noise_rng->Normal(0.0, spec_.noise_sd);
      }
    }
    return ForwardWithNoise(x, y, &noise);
  }
  return ForwardWithNoise(x, y, nullptr);
}

Tensor CriticNetwork::ForwardWithNoise(const Tensor& x, const Tensor* y,
                                       const Matrix* noise) const {
  if (x.cols() != static_cast<Eigen::Index>(layout_.Width())) {
    throw std::invalid_argument("critic: input width " +
                                std::to_string(x.cols()) + " != layout width " +
                                std::to_string(layout_.Width()));
  }
  if (spec_.conditional != (y != nullptr)) {
    throw std::invalid_argument("critic: label presence does not match spec");
  }
  const Eigen::Index nw = NoiseWidth();
  std::vector<Tensor> parts;
  if (nw > 0) {
    Tensor block = nn::SliceCols(x, 0, nw);
    if (noise != nullptr) block = block + nn::Constant(*noise);
    parts.push_back(block);
  }
  if (spec_.embed_categoricals) {
    for (size_t s = 0; s < layout_.spans.size(); ++s) {
      const auto& span = layout_.spans[s];
      parts.push_back(embed_[s](
          nn::SliceCols(x, static_cast<Eigen::Index>(span.offset),
                        static_cast<Eigen::Index>(span.width))));
    }
  }
  if (y != nullptr) {
    if (y->rows() != x.rows() || y->cols() != 1) {
      throw std::invalid_argument("critic: label shape mismatch");
    }
    parts.push_back(*y);
  }
  const Tensor x0 = parts.size() == 1 ? parts[0] : nn::ConcatCols(parts);
  Tensor h = x0;
  for (size_t i = 0; i < hidden_.size(); ++i) {
    h = norms_[i](nn::LeakyRelu(hidden_[i](h), spec_.leaky_slope));
  }
  std::vector<Tensor> joint{h};
  if (!cross_.empty()) {
    Tensor c = x0;
    for (const auto& layer : cross_) c = layer(x0, c);
    joint.push_back(c);
  }
  return head_(joint.size() == 1 ? joint[0] : nn::ConcatCols(joint));
}

Tensor CriticNetwork::Probability(const Tensor& x) const {
  return nn::Sigmoid(ForwardWithNoise(x, nullptr, nullptr));
}

GanNetworks GanNetworks::Create(const tabular::EncodedLayout& layout,
                                const GanConfig& config, uint64_t seed) {
  config.Validate();
  Rng gen_rng(DeriveSeed(seed, "init.generator"));
  Rng disc_rng(DeriveSeed(seed, "init.discriminator"));
  Rng ac_rng(DeriveSeed(seed, "init.aux_classifier"));
  return GanNetworks{
      Generator(layout, config, gen_rng),
      CriticNetwork(layout, DiscriminatorSpec(config), disc_rng, "disc"),
      CriticNetwork(layout, AuxClassifierSpec(config), ac_rng, "ac")};
}

}  // namespace imbal::gan
