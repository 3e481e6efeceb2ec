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


#ifndef IMBAL_GAN_SAMPLING_H_
#define IMBAL_GAN_SAMPLING_H_

#include "imbal/common/random.h"
#include "imbal/gan/trainer.h"
#include "imbal/tabular/frame.h"
#include "imbal/tabular/preprocessor.h"

namespace imbal::gan {

enum class CategoryDraw { kSample, kArgmax };

// Generates n minority rows in encoded space: one hard category per span
// (drawn from the soft output, or its argmax), numerics clipped to [0, 1],
// labels all 1. Naive-categorical generators always use the argmax.
tabular::EncodedMatrix SampleMinorityEncoded(
    const TrainedGan& gan, size_t n, Rng& rng,
    CategoryDraw draw = CategoryDraw::kSample);

// As above, decoded to raw units with the attached preprocessor.
tabular::TabularFrame SampleMinority(const TrainedGan& gan, size_t n, Rng& rng,
                                     CategoryDraw draw = CategoryDraw::kSample);

// P(minority | x) from the frozen auxiliary classifier, one per row of x.
Eigen::VectorXd AuxClassifierProbabilities(const TrainedGan& gan, const Matrix& x);

}  // namespace imbal::gan

#endif  // IMBAL_GAN_SAMPLING_H_
