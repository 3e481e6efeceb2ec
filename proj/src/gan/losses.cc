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


#include "imbal/gan/losses.h"

#include <cmath>
#include <stdexcept>

namespace imbal::gan {

Tensor GumbelSoftmax(const Tensor& logits, double tau, const Matrix& gumbel) {
  if (!(tau > 0)) throw std::invalid_argument("gumbel_softmax: tau must be > 0");
  if (!logits.value().allFinite()) {
    throw std::invalid_argument("gumbel_softmax: non-finite logits");
  }
  if (gumbel.rows() != logits.rows() || gumbel.cols() != logits.cols()) {
    throw std::invalid_argument("gumbel_softmax: noise shape mismatch");
  }
  return nn::Softmax(nn::Scale(logits + nn::Constant(gumbel), 1.0 / tau));
}

Tensor GradientPenaltyAt(const CriticFn& critic, const Matrix& real,
                         const Matrix& fake, const Matrix& labels,
                         double weight, const Matrix& epsilon) {
  if (real.rows() != fake.rows() || real.cols() != fake.cols()) {
    throw std::invalid_argument("gradient_penalty: batch shape mismatch");
  }
  const Matrix mixed =
      (real.array().colwise() * epsilon.col(0).array() +
       fake.array().colwise() * (1.0 - epsilon.col(0).array()))
          .matrix();
  const Tensor x = nn::Parameter(mixed);
  const Tensor scores = critic(x, nn::Constant(labels));
  const Tensor grad = nn::Grad(nn::Sum(scores), std::span<const Tensor>(&x, 1),
                               /*create_graph=*/true)[0];
  const Tensor norm = nn::Pow(nn::AddScalar(nn::RowSums(nn::Square(grad)), 1e-12), 0.5);
  return nn::Scale(nn::Mean(nn::Square(nn::AddScalar(norm, -1.0))), weight);
}

Tensor GradientPenalty(const CriticFn& critic, const Matrix& real,
                       const Matrix& fake, const Matrix& labels, double weight,
                       Rng& rng) {
  Matrix epsilon(real.rows(), 1);
  for (Eigen::Index i = 0; i < epsilon.rows(); ++i) epsilon(i, 0) = rng.Uniform();
  return GradientPenaltyAt(critic, real, fake, labels, weight, epsilon);
}

Tensor AcLossTerm(const Tensor& probs, const Matrix& labels, double cap) {
  if (probs.cols() != 1 || labels.rows() != probs.rows()) {
    throw std::invalid_argument("ac_loss_term: shape mismatch");
  }
  constexpr double kEps = 1e-7;
  const Tensor p = nn::Clamp(probs, kEps, 1.0 - kEps);
  const Tensor y = nn::Constant(labels);
  const Tensor one_minus_y = nn::Constant((1.0 - labels.array()).matrix());
  const Tensor bce = nn::Neg(y * nn::Log(p) +
                             one_minus_y * nn::Log(nn::AddScalar(nn::Neg(p), 1.0)));
  return nn::Mean(nn::Relu(nn::AddScalar(bce, -cap)));
}

double AcScale(const Matrix& disc_fake_scores, double ratio) {
  if (disc_fake_scores.size() == 0) return 0.0;
  return ratio * disc_fake_scores.cwiseAbs().mean();
}

bool UsesGradientPenalty(LossMode mode) {
  return mode == LossMode::kWganGp || mode == LossMode::kVanillaGp;
}

Tensor DiscriminatorLoss(LossMode mode, const Tensor& disc_real,
                         const Tensor& disc_fake) {
  switch (mode) {
    case LossMode::kWganGp:
      return nn::Neg(nn::Mean(disc_real) - nn::Mean(disc_fake));
    case LossMode::kVanilla:
    case LossMode::kVanillaGp:
      // -log sigmoid(r) - log(1 - sigmoid(f)) = softplus(-r) + softplus(f)
      return nn::Mean(nn::Softplus(nn::Neg(disc_real))) +
             nn::Mean(nn::Softplus(disc_fake));
  }
  throw std::invalid_argument("unknown loss mode");
}

Tensor GeneratorLoss(LossMode mode, const Tensor& disc_fake) {
  switch (mode) {
    case LossMode::kWganGp:
      return nn::Neg(nn::Mean(disc_fake));
    case LossMode::kVanilla:
    case LossMode::kVanillaGp:
      return nn::Mean(nn::Softplus(nn::Neg(disc_fake)));
  }
  throw std::invalid_argument("unknown loss mode");
}

LossPair LossTerms(LossMode mode, const Tensor& disc_real,
                   const Tensor& disc_fake) {
  return {DiscriminatorLoss(mode, disc_real, disc_fake),
          GeneratorLoss(mode, disc_fake)};
}

Tensor BceWithLogits(const Tensor& logits, const Matrix& labels) {
  // y softplus(-s) + (1 - y) softplus(s)
  const Tensor y = nn::Constant(labels);
  const Tensor one_minus_y = nn::Constant((1.0 - labels.array()).matrix());
  return nn::Mean(y * nn::Softplus(nn::Neg(logits)) +
                  one_minus_y * nn::Softplus(logits));
}

}  // namespace imbal::gan
