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


#ifndef IMBAL_TESTS_GAN_FIXTURES_H_
#define IMBAL_TESTS_GAN_FIXTURES_H_

#include "imbal/common/random.h"
#include "imbal/gan/config.h"
#include "imbal/nn/autograd.h"
#include "imbal/tabular/preprocessor.h"

namespace imbal::testing {

// One numeric column followed by one 3-category span.
inline tabular::EncodedLayout TinyLayout() {
  tabular::EncodedLayout layout;
  layout.numeric_columns = {0};
  layout.spans = {{1, 1, 3}};
  return layout;
}

// Networks small enough (< 200 parameters each) for exhaustive
// finite-difference checks.
inline gan::GanConfig TinyConfig() {
  gan::GanConfig c;
  c.noise_dim = 3;
  c.gen_layers = {4};
  c.gen_crosslayers = 1;
  c.self_cond_dim = 2;
  c.extra_numeric_layer = true;
  c.disc_layers = {4};
  c.disc_crosslayers = 1;
  c.ac_layers = {3};
  c.ac_crosslayers = 1;
  return c;
}

inline nn::Matrix RandomMatrix(Rng& rng, Eigen::Index r, Eigen::Index c,
                               double lo = -1.0, double hi = 1.0) {
  nn::Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Uniform(lo, hi);
  return m;
}

// Rows in the tiny layout: numeric in [0, 1], a random soft one-hot span.
inline nn::Matrix TinyBatch(Rng& rng, Eigen::Index n) {
  nn::Matrix x(n, 4);
  for (Eigen::Index r = 0; r < n; ++r) {
    x(r, 0) = rng.Uniform();
    double total = 0;
    for (int k = 1; k < 4; ++k) total += (x(r, k) = rng.Uniform(0.05, 1.0));
    for (int k = 1; k < 4; ++k) x(r, k) /= total;
  }
  return x;
}

inline nn::Matrix LabelColumn(Rng& rng, Eigen::Index n) {
  nn::Matrix y(n, 1);
  for (Eigen::Index r = 0; r < n; ++r) y(r, 0) = rng.Bernoulli(0.5) ? 1.0 : 0.0;
  return y;
}

}  // namespace imbal::testing

#endif  // IMBAL_TESTS_GAN_FIXTURES_H_
