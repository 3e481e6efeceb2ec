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


#include "imbal/gan/sampling.h"

#include <algorithm>
#include <stdexcept>

namespace imbal::gan {

tabular::EncodedMatrix SampleMinorityEncoded(const TrainedGan& gan, size_t n,
                                             Rng& rng, CategoryDraw draw) {
  const tabular::EncodedLayout& layout = gan.nets.generator.layout();
  tabular::EncodedMatrix out;
  out.layout = layout;
  out.values = Matrix::Zero(static_cast<Eigen::Index>(n),
                            static_cast<Eigen::Index>(layout.Width()));
  out.labels.assign(n, 1);
  if (gan.config.naive_categorical) draw = CategoryDraw::kArgmax;

  constexpr Eigen::Index kChunk = 256;
  nn::NoGradGuard guard;
  for (Eigen::Index start = 0; start < static_cast<Eigen::Index>(n);
       start += kChunk) {
    const Eigen::Index rows =
        std::min<Eigen::Index>(kChunk, static_cast<Eigen::Index>(n) - start);
    const Matrix z = gan.nets.generator.SampleNoise(rows, rng);
    const Matrix raw = gan.nets.generator
                           .Forward(nn::Constant(z),
                                    nn::Constant(Matrix::Ones(rows, 1)), rng)
                           .Encoded()
                           .value();
    const auto nw = static_cast<Eigen::Index>(layout.NumericWidth());
    out.values.block(start, 0, rows, nw) =
        raw.leftCols(nw).cwiseMax(0.0).cwiseMin(1.0);
    for (const auto& span : layout.spans) {
      const auto off = static_cast<Eigen::Index>(span.offset);
      for (Eigen::Index r = 0; r < rows; ++r) {
        size_t pick = 0;
        if (draw == CategoryDraw::kSample) {
          Eigen::RowVectorXd probs = raw.row(r).segment(off, span.width);
          pick = rng.Categorical(probs.data(), span.width);
        } else {
          Eigen::Index best = 0;
          raw.row(r).segment(off, span.width).maxCoeff(&best);
          pick = static_cast<size_t>(best);
        }
        out.values(start + r, off + static_cast<Eigen::Index>(pick)) = 1.0;
      }
    }
  }
  return out;
}

tabular::TabularFrame SampleMinority(const TrainedGan& gan, size_t n, Rng& rng,
                                     CategoryDraw draw) {
  if (!gan.preprocessor) {
    throw std::invalid_argument("sample_minority: model has no preprocessor");
  }
  return gan.preprocessor->InverseTransform(
      SampleMinorityEncoded(gan, n, rng, draw));
}

Eigen::VectorXd AuxClassifierProbabilities(const TrainedGan& gan, const Matrix& x) {
  nn::NoGradGuard guard;
  return gan.nets.aux_classifier.Probability(nn::Constant(x)).value().col(0);
}

}  // namespace imbal::gan
