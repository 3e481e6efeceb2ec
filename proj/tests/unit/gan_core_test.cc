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


#include <cmath>

#include "doctest.h"
#include "fd_check.h"
#include "gan_fixtures.h"
#include "imbal/gan/losses.h"
#include "imbal/gan/networks.h"

using namespace imbal;
using namespace imbal::gan;
using imbal::testing::CheckGradients;
using imbal::testing::LabelColumn;
using imbal::testing::RandomMatrix;
using imbal::testing::TinyBatch;
using imbal::testing::TinyConfig;
using imbal::testing::TinyLayout;

TEST_CASE("gumbel_softmax reference values") {
  Matrix logits(1, 3);
  logits << 0, 0, 0;
  Matrix p = GumbelSoftmax(nn::Constant(logits), 0.66, Matrix::Zero(1, 3)).value();
  for (int k = 0; k < 3; ++k) CHECK(p(0, k) == doctest::Approx(1.0 / 3).epsilon(1e-15));

  Matrix two(1, 2);
  two << std::log(2.0), 0.0;
  p = GumbelSoftmax(nn::Constant(two), 1.0, Matrix::Zero(1, 2)).value();
  CHECK(std::abs(p(0, 0) - 2.0 / 3) < 1e-12);
  CHECK(std::abs(p(0, 1) - 1.0 / 3) < 1e-12);

  two << 5.0, 0.0;
  p = GumbelSoftmax(nn::Constant(two), 0.01, Matrix::Zero(1, 2)).value();
  CHECK(p(0, 0) > 1 - 1e-6);
  CHECK(p(0, 1) < 1e-6);

  two << std::nan(""), 0.0;
  CHECK_THROWS(GumbelSoftmax(nn::Constant(two), 1.0, Matrix::Zero(1, 2)));
  CHECK_THROWS(GumbelSoftmax(nn::Constant(Matrix::Zero(1, 2)), 0.0, Matrix::Zero(1, 2)));
}

TEST_CASE("property: gumbel_softmax lies on the simplex") {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.Index(8));
    Matrix logits = RandomMatrix(rng, 3, k, -20, 20);
    Matrix g(3, k);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.Gumbel();
    const double tau = rng.Uniform(0.05, 2.0);
    Matrix p = GumbelSoftmax(nn::Constant(logits), tau, g).value();
    for (Eigen::Index r = 0; r < 3; ++r) {
      CHECK(std::abs(p.row(r).sum() - 1.0) < 1e-6);
      CHECK(p.row(r).minCoeff() >= 0.0);
      CHECK(p.row(r).maxCoeff() <= 1.0);
    }
  }
}

TEST_CASE("generator forward: spans on simplex, deterministic, sizes") {
  GanConfig cfg;  // full-size defaults
  auto layout = TinyLayout();
  auto nets = GanNetworks::Create(layout, cfg, 42);
  Rng rng(1);
  Matrix z = nets.generator.SampleNoise(16, rng);
  CHECK(z.minCoeff() >= 0.0);
  CHECK(z.maxCoeff() < 1.0);
  Matrix y = LabelColumn(rng, 16);
  auto gumbel = nets.generator.SampleGumbel(16, rng);
  auto a = nets.generator.ForwardWithNoise(nn::Constant(z), nn::Constant(y), gumbel);
  auto b = nets.generator.ForwardWithNoise(nn::Constant(z), nn::Constant(y), gumbel);
  CHECK(a.Encoded().value() == b.Encoded().value());
  REQUIRE(a.categorical.size() == 1);
  for (Eigen::Index r = 0; r < 16; ++r) {
    CHECK(std::abs(a.categorical[0].value().row(r).sum() - 1.0) < 1e-6);
  }
  CHECK(a.Encoded().cols() == 4);

  // Same seed, same initial weights.
  auto again = GanNetworks::Create(layout, cfg, 42);
  CHECK(again.generator.params().entries()[0].second.value() ==
        nets.generator.params().entries()[0].second.value());
}

TEST_CASE("embedding widths follow min(ceil(k/3), 20)") {
  CHECK(EmbeddingDim(1) == 1);
  CHECK(EmbeddingDim(3) == 1);
  CHECK(EmbeddingDim(4) == 2);
  CHECK(EmbeddingDim(10) == 4);
  CHECK(EmbeddingDim(60) == 20);
  CHECK(EmbeddingDim(100) == 20);
}

TEST_CASE("discriminator embeddings are linear in the span") {
  auto cfg = TinyConfig();
  cfg.numeric_noise_sd = 0.0;
  auto nets = GanNetworks::Create(TinyLayout(), cfg, 3);
  const Matrix& table = nets.discriminator.params().Find("disc.embed0.weight").value();
  Matrix hard(1, 3);
  hard << 1, 0, 0;
  CHECK(nets.discriminator.EmbedSpan(0, nn::Constant(hard)).value() == table.row(0));
  Matrix soft(1, 3);
  soft << 0.5, 0.5, 0;
  Matrix e = nets.discriminator.EmbedSpan(0, nn::Constant(soft)).value();
  CHECK((e - 0.5 * (table.row(0) + table.row(1))).cwiseAbs().maxCoeff() < 1e-15);

  Rng rng(2);
  Matrix x = TinyBatch(rng, 5);
  Matrix y = LabelColumn(rng, 5);
  nn::Tensor yt = nn::Constant(y);
  Matrix d1 = nets.discriminator.Forward(nn::Constant(x), &yt, nullptr).value();
  Matrix d2 = nets.discriminator.Forward(nn::Constant(x), &yt, nullptr).value();
  CHECK(d1 == d2);
  CHECK(d1.cols() == 1);
}

TEST_CASE("auxiliary classifier outputs probabilities") {
  auto cfg = TinyConfig();
  auto nets = GanNetworks::Create(TinyLayout(), cfg, 8);
  Rng rng(3);
  Matrix x = TinyBatch(rng, 20);
  Matrix p = nets.aux_classifier.Probability(nn::Constant(x)).value();
  CHECK(p.minCoeff() > 0.0);
  CHECK(p.maxCoeff() < 1.0);
  for (auto& [name, t] : nets.aux_classifier.params().entries()) {
    nn::Tensor handle = t;
    handle.mutable_value().setZero();
  }
  p = nets.aux_classifier.Probability(nn::Constant(x)).value();
  CHECK(p.minCoeff() == 0.5);
  CHECK(p.maxCoeff() == 0.5);
}

TEST_CASE("generator gradients match finite differences") {
  auto cfg = TinyConfig();
  auto nets = GanNetworks::Create(TinyLayout(), cfg, 11);
  CHECK(nets.generator.params().NumScalars() <= 200);
  Rng rng(5);
  const Matrix z = nets.generator.SampleNoise(6, rng);
  const Matrix y = LabelColumn(rng, 6);
  const auto gumbel = nets.generator.SampleGumbel(6, rng);
  const Matrix weights = RandomMatrix(rng, 6, 4);
  std::vector<Matrix> cond;
  {
    nn::NoGradGuard guard;
    auto o = nets.generator.ForwardWithNoise(nn::Constant(z), nn::Constant(y), gumbel);
    cond.push_back(o.categorical[0].value());
  }
  nn::Tensor zt = nn::Parameter(z);
  // The self-conditioning input is held at its unperturbed value, matching
  // the detached connection.
  auto loss = [&] {
    auto o = nets.generator.ForwardWithNoise(zt, nn::Constant(y), gumbel, &cond);
    return nn::Sum(o.Encoded() * nn::Constant(weights));
  };
  auto params = nets.generator.params().Tensors();
  auto r = CheckGradients(loss, params);
  CHECK(r.max_rel_error < 1e-4);
  auto rz = CheckGradients(loss, {zt});
  CHECK(rz.max_rel_error < 1e-4);

  // Without the override, the analytic gradient must equal the held version:
  // no gradient flows through the self-conditioning path.
  auto detached = [&] {
    auto o = nets.generator.ForwardWithNoise(zt, nn::Constant(y), gumbel);
    return nn::Sum(o.Encoded() * nn::Constant(weights));
  };
  auto g1 = nn::Grad(loss(), params);
  auto g2 = nn::Grad(detached(), params);
  for (size_t i = 0; i < g1.size(); ++i) CHECK(g1[i].value() == g2[i].value());
}

TEST_CASE("discriminator and AC gradients match finite differences") {
  auto cfg = TinyConfig();
  auto nets = GanNetworks::Create(TinyLayout(), cfg, 13);
  CHECK(nets.discriminator.params().NumScalars() <= 200);
  CHECK(nets.aux_classifier.params().NumScalars() <= 200);
  Rng rng(6);
  const Matrix x = TinyBatch(rng, 7);
  const Matrix y = LabelColumn(rng, 7);
  const Matrix noise = RandomMatrix(rng, 7, 1, -0.01, 0.01);
  auto disc_loss = [&] {
    nn::Tensor yt = nn::Constant(y);
    return nn::Mean(nn::Square(
        nets.discriminator.ForwardWithNoise(nn::Constant(x), &yt, &noise)));
  };
  auto rd = CheckGradients(disc_loss, nets.discriminator.params().Tensors());
  CHECK(rd.max_rel_error < 1e-4);

  auto ac_loss = [&] {
    return AcLossTerm(nets.aux_classifier.Probability(nn::Constant(x)), y, 0.0) +
           BceWithLogits(nets.aux_classifier.ForwardWithNoise(nn::Constant(x), nullptr, nullptr), y);
  };
  auto ra = CheckGradients(ac_loss, nets.aux_classifier.params().Tensors());
  CHECK(ra.max_rel_error < 1e-4);
}

TEST_CASE("gradient penalty reference values") {
  auto linear = [](Matrix w) {
    return [w](const nn::Tensor& x, const nn::Tensor&) {
      return nn::MatMul(x, nn::Constant(w));
    };
  };
  Rng rng(7);
  Matrix real = RandomMatrix(rng, 8, 2);
  Matrix fake = RandomMatrix(rng, 8, 2);
  Matrix labels = Matrix::Zero(8, 1);
  Matrix unit(2, 1);
  unit << 0.6, 0.8;
  CHECK(std::abs(GradientPenalty(linear(unit), real, fake, labels, 15.0, rng).item()) < 1e-10);
  Matrix twice(2, 1);
  twice << 2.0, 0.0;
  CHECK(std::abs(GradientPenalty(linear(twice), real, fake, labels, 15.0, rng).item() - 15.0) < 1e-6);
}

TEST_CASE("gradient penalty weight gradient matches finite differences") {
  auto cfg = TinyConfig();
  cfg.numeric_noise_sd = 0.0;
  auto nets = GanNetworks::Create(TinyLayout(), cfg, 17);
  Rng rng(8);
  const Matrix real = TinyBatch(rng, 6);
  const Matrix fake = TinyBatch(rng, 6);
  const Matrix labels = LabelColumn(rng, 6);
  Matrix eps(6, 1);
  for (int i = 0; i < 6; ++i) eps(i, 0) = rng.Uniform();
  CriticFn critic = [&](const nn::Tensor& x, const nn::Tensor& y) {
    return nets.discriminator.ForwardWithNoise(x, &y, nullptr);
  };
  auto loss = [&] { return GradientPenaltyAt(critic, real, fake, labels, 15.0, eps); };
  auto r = CheckGradients(loss, nets.discriminator.params().Tensors());
  CHECK(r.checked == nets.discriminator.params().NumScalars());
  CHECK(r.max_rel_error < 1e-4);
}

TEST_CASE("ac_loss_term and ac_scale reference values") {
  auto term = [](double p, double y) {
    Matrix pm(1, 1), ym(1, 1);
    pm << p;
    ym << y;
    return AcLossTerm(nn::Constant(pm), ym, 0.3).item();
  };
  CHECK(term(0.9, 1) == 0.0);
  CHECK(std::abs(term(0.5, 1) - (std::log(2.0) - 0.3)) < 1e-12);
  CHECK(term(std::exp(-0.3), 1) < 1e-12);
  CHECK(std::isfinite(term(1.0, 0)));
  CHECK(std::isfinite(term(0.0, 1)));

  CHECK(AcScale(Matrix::Constant(5, 1, 4.0)) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(AcScale(Matrix::Zero(5, 1)) == 0.0);
  Matrix s(2, 1);
  s << -2, 2;
  CHECK(AcScale(s) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("loss_terms sign conventions") {
  Matrix r = Matrix::Constant(4, 1, 3.0);
  Matrix f = Matrix::Constant(4, 1, 1.0);
  auto w = LossTerms(LossMode::kWganGp, nn::Constant(r), nn::Constant(f));
  CHECK(w.disc_loss.item() == -2.0);
  CHECK(w.gen_loss.item() == -1.0);
  auto same = LossTerms(LossMode::kWganGp, nn::Constant(r), nn::Constant(r));
  CHECK(same.disc_loss.item() == 0.0);

  auto v = LossTerms(LossMode::kVanilla, nn::Constant(Matrix::Constant(4, 1, 30.0)),
                     nn::Constant(Matrix::Constant(4, 1, -30.0)));
  CHECK(v.disc_loss.item() < 1e-12);
  CHECK(v.gen_loss.item() > 29.0);
  CHECK_THROWS(ParseLossMode("hinge"));
}

TEST_CASE("config JSON round trip") {
  GanConfig c;
  c.epochs = 500;
  c.gen_layers = {64};
  c.loss_mode = LossMode::kVanillaGp;
  CHECK(GanConfig::FromJson(c.ToJson()) == c);
  CHECK_THROWS(GanConfig::FromJson({{"bogus", 1}}));
  CHECK_THROWS(GanConfig::FromJson({{"gumbel_tau", 0.0}}));
}
