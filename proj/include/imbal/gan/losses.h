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


#ifndef IMBAL_GAN_LOSSES_H_
#define IMBAL_GAN_LOSSES_H_

#include <functional>
#include <span>

#include "imbal/common/random.h"
#include "imbal/gan/config.h"
#include "imbal/nn/autograd.h"

namespace imbal::gan {

using nn::Matrix;
using nn::Tensor;

// softmax((logits + gumbel) / tau) per row. Throws on non-finite logits or
// tau <= 0.
Tensor GumbelSoftmax(const Tensor& logits, double tau, const Matrix& gumbel);

// Critic as a function of (input, label column).
using CriticFn = std::function<Tensor(const Tensor& x, const Tensor& y)>;

// weight * mean_i (||grad_x critic(x_i, y_i)|| - 1)^2 at x = e*real + (1-e)*fake
// with one e ~ U[0, 1] per row. Each interpolate keeps the real row's label.
// Differentiable with respect to the critic's weights.
Tensor GradientPenalty(const CriticFn& critic, const Matrix& real,
                       const Matrix& fake, const Matrix& labels, double weight,
                       Rng& rng);
// Same with explicit interpolation weights (n x 1).
Tensor GradientPenaltyAt(const CriticFn& critic, const Matrix& real,
                         const Matrix& fake, const Matrix& labels,
                         double weight, const Matrix& epsilon);

// Batch mean of max(BCE(y, p) - cap, 0); p is clamped to [1e-7, 1 - 1e-7].
Tensor AcLossTerm(const Tensor& probs, const Matrix& labels, double cap);

// ratio * mean |scores|, a plain number (no gradient).
double AcScale(const Matrix& disc_fake_scores, double ratio = 0.1);

struct LossPair {
  Tensor disc_loss;
  Tensor gen_loss;
};

// Adversarial terms only; the penalty and the AC term are added by the
// trainer. Wasserstein modes use raw scores; vanilla modes treat them as
// logits with a non-saturating generator loss.
LossPair LossTerms(LossMode mode, const Tensor& disc_real,
                   const Tensor& disc_fake);
Tensor DiscriminatorLoss(LossMode mode, const Tensor& disc_real,
                         const Tensor& disc_fake);
Tensor GeneratorLoss(LossMode mode, const Tensor& disc_fake);
bool UsesGradientPenalty(LossMode mode);

// Mean binary cross-entropy of logits against 0/1 labels.
Tensor BceWithLogits(const Tensor& logits, const Matrix& labels);

}  // namespace imbal::gan

#endif  // IMBAL_GAN_LOSSES_H_
