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


#ifndef IMBAL_RESAMPLE_OVERSAMPLE_H_
#define IMBAL_RESAMPLE_OVERSAMPLE_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "imbal/common/random.h"
#include "imbal/tabular/preprocessor.h"

namespace imbal::resample {

enum class MethodTag { kNone, kRandom, kSmote, kSmoteNc, kBSmote, kAdasyn, kCwgan };

inline constexpr std::array<MethodTag, 7> kAllMethods = {
    MethodTag::kNone,   MethodTag::kRandom, MethodTag::kSmote, MethodTag::kSmoteNc,
    MethodTag::kBSmote, MethodTag::kAdasyn, MethodTag::kCwgan};

// none, random, smote, smote_nc, b_smote, adasyn, cwgan.
std::string MethodName(MethodTag tag);
MethodTag ParseMethod(std::string_view name);

// Nearest-neighbour settings of the interpolating methods. The GAN settings
// of cwgan live with the benchmark configuration.
struct OversampleMethod {
  MethodTag tag = MethodTag::kNone;
  size_t k_neighbours = 5;
  size_t m_neighbours = 10;  // B-SMOTE only

  void Validate() const;
  bool operator==(const OversampleMethod&) const = default;
};

struct OversampleResult {
  tabular::EncodedMatrix data;  // input rows first, then synthetic rows
  size_t appended = 0;
  bool fell_back = false;  // B-SMOTE / ADASYN ran plain SMOTE
};

// Class with fewer rows; ties go to label 1.
int MinorityLabel(const std::vector<int>& labels);
// Rows to append for equal class counts.
size_t ParityDeficit(const std::vector<int>& labels);

// n_new rows of `minority_rows`, drawn uniformly with replacement.
std::vector<size_t> RandomOversampleRows(const std::vector<size_t>& minority_rows,
                                         size_t n_new, Rng& rng);

// Appends synthetic minority rows until both classes have equal counts.
// SMOTENC runs on the mixed form (scaled numerics plus category codes) and
// the result is re-encoded; the other methods interpolate encoded rows
// directly, one-hot columns included. Throws on single-class input, on
// cwgan (trained by the gan module) and when the minority is too small.
OversampleResult Oversample(const OversampleMethod& method,
                            const tabular::EncodedMatrix& train, Rng& rng);

}  // namespace imbal::resample

#endif  // IMBAL_RESAMPLE_OVERSAMPLE_H_
