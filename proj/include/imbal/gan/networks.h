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


#ifndef IMBAL_GAN_NETWORKS_H_
#define IMBAL_GAN_NETWORKS_H_

#include <optional>
#include <vector>

#include "imbal/common/random.h"
#include "imbal/gan/config.h"
#include "imbal/nn/autograd.h"
#include "imbal/nn/layers.h"
#include "imbal/tabular/preprocessor.h"

namespace imbal::gan {

using nn::Matrix;
using nn::Tensor;

// Conditional generator. The hidden stack and a crosslayer stack both read
// [z, y]; their outputs are concatenated and feed one Gumbel-softmax head per
// categorical column plus a linear numeric head. The numeric head also sees
// the (detached) categorical outputs, embedded and reduced to a short vector.
class Generator {
 public:
  struct Output {
    Tensor numeric;                   // n x numeric width; undefined if none
    std::vector<Tensor> categorical;  // soft one-hot per span
    // All columns in encoded layout order.
    Tensor Encoded() const;
  };

  Generator(const tabular::EncodedLayout& layout, const GanConfig& config,
            Rng& init_rng);
  Generator(Generator&&) = default;
  Generator& operator=(Generator&&) = default;

  // Draws Gumbel noise from `rng` (row by row, span by span).
  Output Forward(const Tensor& z, const Tensor& y, Rng& rng) const;
  // `gumbel` holds one n x k matrix per span. `self_cond` optionally replaces
  // the categorical values fed to the self-conditioning path, which lets a
  // finite-difference check hold that detached input fixed.
  Output ForwardWithNoise(const Tensor& z, const Tensor& y,
                          const std::vector<Matrix>& gumbel,
                          const std::vector<Matrix>* self_cond = nullptr) const;
  // n x noise_dim draws from U[0, 1].
  Matrix SampleNoise(Eigen::Index n, Rng& rng) const;
  std::vector<Matrix> SampleGumbel(Eigen::Index n, Rng& rng) const;

  nn::ParamStore& params() { return store_; }
  const nn::ParamStore& params() const { return store_; }
  const tabular::EncodedLayout& layout() const { return layout_; }

 private:
  tabular::EncodedLayout layout_;
  GanConfig config_;
  nn::ParamStore store_;
  std::vector<nn::Linear> hidden_;
  std::vector<nn::CrossLayer> cross_;
  std::vector<nn::Linear> cat_heads_;
  std::vector<nn::Linear> cond_embed_;
  std::optional<nn::Linear> cond_reduce_;
  std::optional<nn::Linear> extra_;
  std::optional<nn::Linear> numeric_head_;
};

struct CriticSpec {
  std::vector<int> layers;
  int crosslayers = 0;
  bool conditional = false;   // appends the label to the input
  double noise_sd = 0.0;      // Gaussian noise on the numeric block
  bool embed_categoricals = true;
  double leaky_slope = 0.2;
};

CriticSpec DiscriminatorSpec(const GanConfig& config);
CriticSpec AuxClassifierSpec(const GanConfig& config);

// Shared structure of the discriminator and the auxiliary classifier:
// categorical spans pass through bias-free embeddings, the hidden stack is
// Linear -> leaky rectifier -> layer norm, a crosslayer stack runs in
// parallel on the input, and a linear head maps the concatenation to one
// unbounded score.
class CriticNetwork {
 public:
  CriticNetwork(const tabular::EncodedLayout& layout, CriticSpec spec,
                Rng& init_rng, const char* name);
  CriticNetwork(CriticNetwork&&) = default;
  CriticNetwork& operator=(CriticNetwork&&) = default;

  // `y` (n x 1) is required iff the spec is conditional; `noise_rng` is
  // required iff noise_sd > 0.
  Tensor Forward(const Tensor& x, const Tensor* y, Rng* noise_rng) const;
  // Like Forward, with explicit noise for the noised block (n x width).
  Tensor ForwardWithNoise(const Tensor& x, const Tensor* y,
                          const Matrix* noise) const;
  // sigmoid(Forward); the auxiliary classifier's P(minority | x).
  Tensor Probability(const Tensor& x) const;
  // Embedded representation of one span (for inspection and tests).
  Tensor EmbedSpan(size_t span, const Tensor& values) const;
  Eigen::Index NoiseWidth() const;

  nn::ParamStore& params() { return store_; }
  const nn::ParamStore& params() const { return store_; }
  const CriticSpec& spec() const { return spec_; }

 private:
  tabular::EncodedLayout layout_;
  CriticSpec spec_;
  nn::ParamStore store_;
  std::vector<nn::Linear> embed_;
  std::vector<nn::Linear> hidden_;
  std::vector<nn::LayerNorm> norms_;
  std::vector<nn::CrossLayer> cross_;
  nn::Linear head_;
};

// Parameters of all three networks, initialized from one stream.
struct GanNetworks {
  Generator generator;
  CriticNetwork discriminator;
  CriticNetwork aux_classifier;

  static GanNetworks Create(const tabular::EncodedLayout& layout,
                            const GanConfig& config, uint64_t seed);
};

}  // namespace imbal::gan

#endif  // IMBAL_GAN_NETWORKS_H_
