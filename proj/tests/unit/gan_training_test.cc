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


#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <doctest.h>

#include "gan_fixtures.h"
#include "imbal/bench/toy_data.h"
#include "imbal/gan/sampling.h"
#include "imbal/gan/trainer.h"

namespace imbal::gan {
namespace {

using nn::Matrix;

// Two numeric columns plus a 3-category span; the classes are separated by a
// linear boundary in the numeric block and the category is pure noise.
tabular::EncodedMatrix Blobs(size_t rows, uint64_t seed) {
  Rng rng(seed);
  tabular::EncodedMatrix m;
  m.layout.numeric_columns = {0, 1};
  m.layout.spans = {{2, 2, 3}};
  m.values = Matrix::Zero(static_cast<Eigen::Index>(rows), 5);
  for (size_t i = 0; i < rows; ++i) {
    const int label = rng.Bernoulli(0.3) ? 1 : 0;
    const double centre = label ? 0.75 : 0.25;
    const auto r = static_cast<Eigen::Index>(i);
    m.values(r, 0) = std::clamp(rng.Normal(centre, 0.07), 0.0, 1.0);
    m.values(r, 1) = std::clamp(rng.Normal(centre, 0.07), 0.0, 1.0);
    m.values(r, 2 + static_cast<Eigen::Index>(rng.Index(3))) = 1.0;
    m.labels.push_back(label);
  }
  return m;
}

GanConfig SmallConfig(int epochs) {
  GanConfig c = testing::TinyConfig();
  c.epochs = epochs;
  c.batch_size = 16;
  c.ac_pretrain_epochs = 30;
  return c;
}

bool SameHistory(const TrainingLog& a, const TrainingLog& b) {
  if (a.epochs.size() != b.epochs.size() ||
      a.gen_steps.size() != b.gen_steps.size() ||
      a.ac_pretrain_loss != b.ac_pretrain_loss) {
    return false;
  }
  for (size_t i = 0; i < a.epochs.size(); ++i) {
    const EpochLog& x = a.epochs[i];
    const EpochLog& y = b.epochs[i];
    if (x.wasserstein != y.wasserstein || x.penalty != y.penalty ||
        x.gen_loss != y.gen_loss || x.ac_term != y.ac_term) {
      return false;
    }
  }
  return true;
}

TEST_CASE("batch plan keeps full batches and drops the remainder") {
  CHECK(PlanBatches(130, 64).batches == 2);
  CHECK(PlanBatches(130, 64).batch_size == 64);
  CHECK(PlanBatches(128, 64).batches == 2);
  const BatchPlan small = PlanBatches(10, 64);
  CHECK(small.batches == 1);
  CHECK(small.batch_size == 10);
  CHECK_THROWS_AS(PlanBatches(0, 64), std::invalid_argument);
}

TEST_CASE("auxiliary classifier pretraining separates blobs") {
  const tabular::EncodedMatrix data = Blobs(400, 11);
  GanConfig config;
  config.batch_size = 32;
  Rng init(5);
  CriticNetwork ac(data.layout, AuxClassifierSpec(config), init, "ac");
  const std::vector<double> history =
      PretrainAuxClassifier(ac, data.values, data.labels, config, 99);
  CHECK(history.size() == 30);
  CHECK(history.back() < history.front());

  nn::NoGradGuard guard;
  const Matrix p = ac.Probability(nn::Constant(data.values)).value();
  int correct = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    correct += (p(i, 0) > 0.5) == (data.labels[static_cast<size_t>(i)] == 1);
  }
  CHECK(static_cast<double>(correct) / static_cast<double>(p.rows()) > 0.95);
}

TEST_CASE("auxiliary classifier pretraining is deterministic") {
  const tabular::EncodedMatrix data = Blobs(120, 3);
  GanConfig config = SmallConfig(1);
  config.ac_pretrain_epochs = 3;
  auto train = [&] {
    Rng init(1);
    CriticNetwork ac(data.layout, AuxClassifierSpec(config), init, "ac");
    PretrainAuxClassifier(ac, data.values, data.labels, config, 17);
    return ac.params().Tensors();
  };
  const auto a = train();
  const auto b = train();
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].value() == b[i].value());
}

TEST_CASE("auxiliary classifier pretraining rejects single-class data") {
  tabular::EncodedMatrix data = Blobs(50, 3);
  std::fill(data.labels.begin(), data.labels.end(), 0);
  GanConfig config = SmallConfig(1);
  Rng init(1);
  CriticNetwork ac(data.layout, AuxClassifierSpec(config), init, "ac");
  CHECK_THROWS_AS(
      PretrainAuxClassifier(ac, data.values, data.labels, config, 1),
      std::invalid_argument);
}

TEST_CASE("training schedule bookkeeping") {
  const tabular::EncodedMatrix data = Blobs(100, 21);
  const GanConfig config = SmallConfig(4);
  const TrainedGan gan = TrainCwgan(data, config, 8);
  const BatchPlan plan = PlanBatches(100, config.batch_size);

  CHECK(gan.log.epochs.size() == 4);
  CHECK(gan.log.ac_pretrain_loss.size() == 30);
  CHECK(gan.log.generator_steps == 4 * plan.batches);
  CHECK(gan.log.disc_steps == 3 * gan.log.generator_steps);
  CHECK(gan.log.gen_steps.size() == static_cast<size_t>(gan.log.generator_steps));
  for (const EpochLog& e : gan.log.epochs) {
    CHECK(e.disc_steps == 3 * e.gen_steps);
    CHECK(std::isfinite(e.wasserstein));
    CHECK(e.penalty >= 0);
  }
  for (const GenStepLog& s : gan.log.gen_steps) {
    CHECK(s.ac_scale == doctest::Approx(0.1 * s.mean_abs_score).epsilon(1e-12));
    CHECK(s.ac_term >= 0);
  }
  const int positives = std::accumulate(data.labels.begin(), data.labels.end(), 0);
  CHECK(gan.minority_share == doctest::Approx(positives / 100.0));
}

TEST_CASE("training without the auxiliary classifier logs no AC terms") {
  const tabular::EncodedMatrix data = Blobs(64, 2);
  GanConfig config = SmallConfig(2);
  config.use_ac = false;
  const TrainedGan gan = TrainCwgan(data, config, 4);
  CHECK(gan.log.ac_pretrain_loss.empty());
  for (const GenStepLog& s : gan.log.gen_steps) {
    CHECK(s.ac_term == 0);
    CHECK(s.ac_scale == 0);
  }
}

TEST_CASE("identical seeds give identical loss histories") {
  const tabular::EncodedMatrix data = Blobs(80, 4);
  const GanConfig config = SmallConfig(3);
  const TrainedGan a = TrainCwgan(data, config, 77);
  const TrainedGan b = TrainCwgan(data, config, 77);
  const TrainedGan c = TrainCwgan(data, config, 78);
  CHECK(SameHistory(a.log, b.log));
  CHECK_FALSE(SameHistory(a.log, c.log));
  const auto pa = a.nets.generator.params().Tensors();
  const auto pb = b.nets.generator.params().Tensors();
  for (size_t i = 0; i < pa.size(); ++i) CHECK(pa[i].value() == pb[i].value());
}

TEST_CASE("every loss mode and the naive ablation train") {
  const tabular::EncodedMatrix data = Blobs(64, 6);
  for (LossMode mode : {LossMode::kWganGp, LossMode::kVanilla, LossMode::kVanillaGp}) {
    GanConfig config = SmallConfig(2);
    config.loss_mode = mode;
    CHECK_NOTHROW(TrainCwgan(data, config, 1));
  }
  GanConfig naive = SmallConfig(2);
  naive.naive_categorical = true;
  CHECK_NOTHROW(TrainCwgan(data, naive, 1));
}

TEST_CASE("non-finite input aborts training with a diagnostic") {
  tabular::EncodedMatrix data = Blobs(64, 6);
  data.values(3, 0) = std::numeric_limits<double>::quiet_NaN();
  GanConfig config = SmallConfig(2);
  config.use_ac = false;
  try {
    TrainCwgan(data, config, 1);
    FAIL("expected divergence");
  } catch (const TrainingDiverged& e) {
    CHECK(std::string(e.what()).find("epoch 0") != std::string::npos);
  }
}

TEST_CASE("sampling contract") {
  bench::ToyDataSpec spec;
  spec.rows = 200;
  const tabular::TabularFrame frame = bench::MakeToyData(spec);
  auto pre = std::make_shared<tabular::PreprocessorModel>(
      tabular::PreprocessorModel::Fit(frame, bench::ToySchema()));
  const tabular::EncodedMatrix encoded = pre->Transform(frame);
  const TrainedGan gan = TrainCwgan(encoded, SmallConfig(2), 3, pre);

  Rng rng(12);
  CHECK(SampleMinorityEncoded(gan, 0, rng).NumRows() == 0);
  CHECK(SampleMinority(gan, 0, rng).NumRows() == 0);

  const tabular::EncodedMatrix s = SampleMinorityEncoded(gan, 400, rng);
  REQUIRE(s.NumRows() == 400);
  CHECK(s.layout == encoded.layout);
  for (size_t r = 0; r < 400; ++r) CHECK(s.labels[r] == 1);
  const auto nw = static_cast<Eigen::Index>(s.layout.NumericWidth());
  CHECK(s.values.leftCols(nw).minCoeff() >= 0.0);
  CHECK(s.values.leftCols(nw).maxCoeff() <= 1.0);
  for (const auto& span : s.layout.spans) {
    const Matrix block = s.values.middleCols(static_cast<Eigen::Index>(span.offset),
                                             static_cast<Eigen::Index>(span.width));
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      CHECK(block.row(r).sum() == 1.0);
      CHECK(block.row(r).maxCoeff() == 1.0);
    }
  }

  const tabular::TabularFrame raw = SampleMinority(gan, 400, rng);
  REQUIRE(raw.NumRows() == 400);
  for (const auto& label : raw.target) CHECK(label == "yes");
  for (size_t c = 0; c < raw.columns.size(); ++c) {
    const auto& col = raw.columns[c];
    const auto& train = frame.columns[c];
    if (col.kind == tabular::ColumnKind::kNumerical) {
      const auto [lo, hi] = std::minmax_element(train.numeric.begin(), train.numeric.end());
      for (double v : col.numeric) {
        CHECK(v >= *lo - 1e-9);
        CHECK(v <= *hi + 1e-9);
      }
    } else {
      const std::set<std::string> legal(train.categorical.begin(), train.categorical.end());
      for (const auto& v : col.categorical) CHECK(legal.count(v) == 1);
    }
  }
}

TEST_CASE("argmax draw is deterministic given the noise stream") {
  const tabular::EncodedMatrix data = Blobs(64, 9);
  const TrainedGan gan = TrainCwgan(data, SmallConfig(1), 2);
  Rng a(5), b(5);
  CHECK(SampleMinorityEncoded(gan, 50, a, CategoryDraw::kArgmax).values ==
        SampleMinorityEncoded(gan, 50, b, CategoryDraw::kArgmax).values);
}

}  // namespace
}  // namespace imbal::gan
