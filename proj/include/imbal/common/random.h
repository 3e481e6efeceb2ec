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


#ifndef IMBAL_COMMON_RANDOM_H_
#define IMBAL_COMMON_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace imbal {

// Seedable random stream. Every draw is derived from the raw 64-bit engine
// output with fixed arithmetic, so streams are reproducible across standard
// library implementations (unlike std::*_distribution).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on (0, 1).
  double UniformOpen();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Normal();
  double Normal(double mean, double sd) { return mean + sd * Normal(); }
  // Standard Gumbel(0, 1).
  double Gumbel();
  // Uniform integer in [0, n). n must be positive.
  size_t Index(size_t n);
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Index(i)]);
    }
  }

  // Index drawn proportionally to non-negative weights (sum > 0).
  size_t Categorical(const double* weights, size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Deterministic seed derivation: mixes a parent seed with a tag so that
// independent tasks get decorrelated streams regardless of execution order.
uint64_t DeriveSeed(uint64_t parent, std::string_view tag);
uint64_t DeriveSeed(uint64_t parent, uint64_t tag);

}  // namespace imbal

#endif  // IMBAL_COMMON_RANDOM_H_
