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


#include "imbal/common/random.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "imbal/common/hash.h"

namespace imbal {

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::UniformOpen() {
  // (k + 0.5) / 2^53 is never 0 or 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = UniformOpen();
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

double Rng::Gumbel() { return -std::log(-std::log(UniformOpen())); }

size_t Rng::Index(size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::Index: empty range");
  // Rejection sampling removes modulo bias.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<size_t>(x % n);
}

size_t Rng::Categorical(const double* weights, size_t n) {
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) total += weights[i];
  if (!(total > 0.0)) throw std::invalid_argument("Rng::Categorical: zero mass");
  double u = Uniform() * total;
  for (size_t i = 0; i < n; ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // Rounding can leave u marginally above the last weight.
  for (size_t i = n; i > 0; --i) {
    if (weights[i - 1] > 0.0) return i - 1;
  }
  return n - 1;
}

uint64_t DeriveSeed(uint64_t parent, std::string_view tag) {
  return SplitMix64(parent ^ SplitMix64(Fnv1a64(tag)));
}

uint64_t DeriveSeed(uint64_t parent, uint64_t tag) {
  return SplitMix64(parent ^ SplitMix64(tag + 0x9e3779b97f4a7c15ULL));
}

}  // namespace imbal
