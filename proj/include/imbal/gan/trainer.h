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


#ifndef IMBAL_GAN_TRAINER_H_
#define IMBAL_GAN_TRAINER_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "imbal/gan/config.h"
#include "imbal/gan/networks.h"
#include "imbal/tabular/preprocessor.h"

namespace imbal::gan {

struct EpochLog {
  int epoch = 0;
  double disc_loss = 0;    // adversarial part, batch mean
  double wasserstein = 0;  // mean D(real) - mean D(fake)
  double penalty = 0;
  double gen_loss = 0;     // adversarial part, mean over generator steps
  double ac_term = 0;
  double ac_scale = 0;
  int disc_steps = 0;
  int gen_steps = 0;
};

struct GenStepLog {
  long step = 0;
  double ac_scale = 0;        // 0.1 * mean |D(G(z))| of this step's batch
  double mean_abs_score = 0;  // mean |D(G(z))|
  double ac_term = 0;
};

struct TrainingLog {
  std::vector<double> ac_pretrain_loss;  // one entry per pretraining epoch
  std::vector<EpochLog> epochs;
  std::vector<GenStepLog> gen_steps;
  long disc_steps = 0;
  long generator_steps = 0;
};

struct TrainedGan {
  GanConfig config;
  GanNetworks nets;
  double minority_share = 0;  // label distribution the generator saw
  TrainingLog log;
  std::shared_ptr<const tabular::PreprocessorModel> preprocessor;
};

// Thrown when a loss or gradient becomes non-finite.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trains `ac` with binary cross-entropy on real rows for
// config.ac_pretrain_epochs shuffled passes. Returns per-epoch mean loss.
std::vector<double> PretrainAuxClassifier(CriticNetwork& ac, const Matrix& x,
                                          const std::vector<int>& labels,
                                          const GanConfig& config,
                                          uint64_t seed);

// Full adversarial schedule: every batch gets critic_updates_per_gen
// discriminator steps followed by one generator step. The AC is pretrained
// first (when enabled) and then frozen.
TrainedGan TrainCwgan(const tabular::EncodedMatrix& train,
                      const GanConfig& config, uint64_t seed,
                      std::shared_ptr<const tabular::PreprocessorModel>
                          preprocessor = nullptr);

// Rows per batch and batches per epoch for a training set of `rows`.
struct BatchPlan {
  Eigen::Index batch_size;
  Eigen::Index batches;
};
BatchPlan PlanBatches(Eigen::Index rows, int batch_size);

}  // namespace imbal::gan

#endif  // IMBAL_GAN_TRAINER_H_
