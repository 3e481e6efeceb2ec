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


#include "imbal/gan/trainer.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include <spdlog/spdlog.h>

#include "imbal/common/random.h"
#include "imbal/gan/losses.h"

namespace imbal::gan {
namespace {

Matrix GatherRows(const Matrix& x, const std::vector<size_t>& order,
                  Eigen::Index start, Eigen::Index count) {
  Matrix out(count, x.cols());
  for (Eigen::Index i = 0; i < count; ++i) {
    out.row(i) = x.row(static_cast<Eigen::Index>(order[start + i]));
  }
  return out;
}

Matrix GatherLabels(const std::vector<int>& labels,
                    const std::vector<size_t>& order, Eigen::Index start,
                    Eigen::Index count) {
  Matrix out(count, 1);
  for (Eigen::Index i = 0; i < count; ++i) {
    out(i, 0) = labels[order[start + i]];
  }
  return out;
}

void CheckFinite(double value, const char* what, int epoch, long step) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "training diverged: " << what << " = " << value << " at epoch "
        << epoch << ", discriminator step " << step;
    throw TrainingDiverged(msg.str());
  }
}

void CheckFinite(const std::vector<Tensor>& grads, const char* what, int epoch,
                 long step) {
  for (const auto& g : grads) {
    if (!g.value().allFinite()) {
      CheckFinite(std::nan(""), what, epoch, step);
    }
  }
}

}  // namespace

BatchPlan PlanBatches(Eigen::Index rows, int batch_size) {
  if (rows <= 0) throw std::invalid_argument("no training rows");
  if (rows < batch_size) return {rows, 1};
  return {batch_size, rows / batch_size};
}

std::vector<double> PretrainAuxClassifier(CriticNetwork& ac, const Matrix& x,
                                          const std::vector<int>& labels,
                                          const GanConfig& config,
                                          uint64_t seed) {
  const int positives = std::accumulate(labels.begin(), labels.end(), 0);
  if (positives == 0 || positives == static_cast<int>(labels.size())) {
    throw std::invalid_argument(
        "auxiliary classifier pretraining needs both classes");
  }
  Rng rng(seed);
  nn::Adam opt(ac.params().Tensors(), config.learning_rate, config.beta1,
               config.beta2, config.adam_eps);
  const auto params = ac.params().Tensors();
  const BatchPlan plan = PlanBatches(x.rows(), config.batch_size);
  std::vector<size_t> order(static_cast<size_t>(x.rows()));
  std::vector<double> history;
  for (int epoch = 0; epoch < config.ac_pretrain_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    double total = 0;
    for (Eigen::Index b = 0; b < plan.batches; ++b) {
      const Eigen::Index start = b * plan.batch_size;
      const Matrix xb = GatherRows(x, order, start, plan.batch_size);
      const Matrix yb = GatherLabels(labels, order, start, plan.batch_size);
      const Tensor loss =
          BceWithLogits(ac.ForwardWithNoise(nn::Constant(xb), nullptr, nullptr), yb);
      CheckFinite(loss.item(), "auxiliary classifier loss", epoch, b);
      opt.Step(nn::Grad(loss, params));
      total += loss.item();
    }
    history.push_back(total / static_cast<double>(plan.batches));
    spdlog::debug("ac pretrain epoch {}/{}: bce {:.5f}", epoch + 1,
                  config.ac_pretrain_epochs, history.back());
  }
  return history;
}

TrainedGan TrainCwgan(
    const tabular::EncodedMatrix& train, const GanConfig& config,
    uint64_t seed,
    std::shared_ptr<const tabular::PreprocessorModel> preprocessor) {
  config.Validate();
  const Matrix& x = train.values;
  const std::vector<int>& labels = train.labels;
  if (static_cast<size_t>(x.rows()) != labels.size()) {
    throw std::invalid_argument("train_cwgan: label count mismatch");
  }
  const int positives = std::accumulate(labels.begin(), labels.end(), 0);

  TrainedGan out{config, GanNetworks::Create(train.layout, config, seed),
                 static_cast<double>(positives) / static_cast<double>(labels.size()),
                 {}, std::move(preprocessor)};
  GanNetworks& nets = out.nets;
  TrainingLog& log = out.log;

  if (config.use_ac) {
    log.ac_pretrain_loss = PretrainAuxClassifier(
        nets.aux_classifier, x, labels, config, DeriveSeed(seed, "ac_pretrain"));
  }

  Rng rng(DeriveSeed(seed, "train"));
  const auto gen_params = nets.generator.params().Tensors();
  const auto disc_params = nets.discriminator.params().Tensors();
  nn::Adam gen_opt(gen_params, config.learning_rate, config.beta1, config.beta2,
                   config.adam_eps);
  nn::Adam disc_opt(disc_params, config.learning_rate, config.beta1,
                    config.beta2, config.adam_eps);
  const bool penalized = UsesGradientPenalty(config.loss_mode);
  const CriticFn critic = [&](const Tensor& in, const Tensor& y) {
    return nets.discriminator.Forward(in, &y, &rng);
  };

  const BatchPlan plan = PlanBatches(x.rows(), config.batch_size);
  const Eigen::Index n = plan.batch_size;
  std::vector<size_t> order(static_cast<size_t>(x.rows()));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    EpochLog e;
    e.epoch = epoch;
    for (Eigen::Index b = 0; b < plan.batches; ++b) {
      const Matrix real = GatherRows(x, order, b * n, n);
      const Matrix yb = GatherLabels(labels, order, b * n, n);
      const Tensor y = nn::Constant(yb);

      // Each critic step sees the same real batch against fresh fakes.
      for (int k = 0; k < config.critic_updates_per_gen; ++k) {
        Matrix fake;
        {
          nn::NoGradGuard guard;
          const Matrix z = nets.generator.SampleNoise(n, rng);
          fake = nets.generator.Forward(nn::Constant(z), y, rng).Encoded().value();
        }
        const Tensor d_real =
            nets.discriminator.Forward(nn::Constant(real), &y, &rng);
        const Tensor d_fake =
            nets.discriminator.Forward(nn::Constant(fake), &y, &rng);
        Tensor d_loss = DiscriminatorLoss(config.loss_mode, d_real, d_fake);
        const double adversarial = d_loss.item();
        double penalty = 0;
        if (penalized && config.gp_weight > 0) {
          const Tensor gp =
              GradientPenalty(critic, real, fake, yb, config.gp_weight, rng);
          penalty = gp.item();
          d_loss = d_loss + gp;
        }
        ++log.disc_steps;
        CheckFinite(d_loss.item(), "discriminator loss", epoch, log.disc_steps);
        const auto d_grads = nn::Grad(d_loss, disc_params);
        CheckFinite(d_grads, "discriminator gradient", epoch, log.disc_steps);
        disc_opt.Step(d_grads);
        e.disc_loss += adversarial;
        e.wasserstein += d_real.value().mean() - d_fake.value().mean();
        e.penalty += penalty;
        ++e.disc_steps;
      }

      Matrix y_gen(n, 1);
      for (Eigen::Index i = 0; i < n; ++i) {
        y_gen(i, 0) = rng.Bernoulli(out.minority_share) ? 1.0 : 0.0;
      }
      const Tensor yg = nn::Constant(y_gen);
      const Matrix z = nets.generator.SampleNoise(n, rng);
      const Tensor gen_x = nets.generator.Forward(nn::Constant(z), yg, rng).Encoded();
      const Tensor g_score = nets.discriminator.Forward(gen_x, &yg, &rng);
      Tensor g_loss = GeneratorLoss(config.loss_mode, g_score);
      const double g_adv = g_loss.item();
      GenStepLog step;
      step.step = log.generator_steps + 1;
      step.mean_abs_score = g_score.value().cwiseAbs().mean();
      if (config.use_ac) {
        step.ac_scale = AcScale(g_score.value(), config.ac_scale_ratio);
        const Tensor term =
            AcLossTerm(nets.aux_classifier.Probability(gen_x), y_gen, config.ac_cap);
        step.ac_term = term.item();
        g_loss = g_loss + nn::Scale(term, step.ac_scale);
      }
      CheckFinite(g_loss.item(), "generator loss", epoch, log.disc_steps);
      const auto g_grads = nn::Grad(g_loss, gen_params);
      CheckFinite(g_grads, "generator gradient", epoch, log.disc_steps);
      gen_opt.Step(g_grads);
      ++log.generator_steps;
      log.gen_steps.push_back(step);
      e.gen_loss += g_adv;
      e.ac_term += step.ac_term;
      e.ac_scale += step.ac_scale;
      ++e.gen_steps;
    }
    if (e.disc_steps > 0) {
      e.disc_loss /= e.disc_steps;
      e.wasserstein /= e.disc_steps;
      e.penalty /= e.disc_steps;
    }
    if (e.gen_steps > 0) {
      e.gen_loss /= e.gen_steps;
      e.ac_term /= e.gen_steps;
      e.ac_scale /= e.gen_steps;
    }
    log.epochs.push_back(e);
    spdlog::debug(
        "epoch {}/{}: W {:.4f} gp {:.4f} gen {:.4f} ac {:.4f} lambda_ac {:.4f}",
        epoch + 1, config.epochs, e.wasserstein, e.penalty, e.gen_loss,
        e.ac_term, e.ac_scale);
  }
  return out;
}

}  // namespace imbal::gan
