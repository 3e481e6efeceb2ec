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


#ifndef IMBAL_NN_LAYERS_H_
#define IMBAL_NN_LAYERS_H_

#include <string>
#include <utility>
#include <vector>

#include "imbal/common/random.h"
#include "imbal/nn/autograd.h"

namespace imbal::nn {

// Ordered, named collection of trainable tensors owned by one network.
class ParamStore {
 public:
  Tensor Add(std::string name, Matrix init);

  const std::vector<std::pair<std::string, Tensor>>& entries() const {
    return entries_;
  }
  std::vector<Tensor> Tensors() const;
  size_t NumScalars() const;
  // Copies values from a store with the same names and shapes.
  void CopyValuesFrom(const ParamStore& other);
  const Tensor& Find(const std::string& name) const;

 private:
  std::vector<std::pair<std::string, Tensor>> entries_;
};

// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)).
Matrix FanInUniform(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in,
                    Rng& rng);

// x W + b with W of shape in x out.
struct Linear {
  Tensor weight;
  Tensor bias;  // undefined when created without bias

  static Linear Create(ParamStore& store, const std::string& name,
                       Eigen::Index in, Eigen::Index out, Rng& rng,
                       bool with_bias = true);
  Tensor operator()(const Tensor& x) const;
  Eigen::Index in() const { return weight.rows(); }
  Eigen::Index out() const { return weight.cols(); }
};

// x0 * (xn w) + b + xn, with w a d x 1 column; the d x d outer product
// x0 xn^T is never formed.
struct CrossLayer {
  Tensor weight;
  Tensor bias;

  static CrossLayer Create(ParamStore& store, const std::string& name,
                           Eigen::Index dim, Rng& rng);
  Tensor operator()(const Tensor& x0, const Tensor& xn) const;
};

struct LayerNorm {
  Tensor gain;
  Tensor bias;
  double eps = 1e-5;

  static LayerNorm Create(ParamStore& store, const std::string& name,
                          Eigen::Index dim);
  Tensor operator()(const Tensor& x) const;
};

// Adam with bias correction.
class Adam {
 public:
  Adam(std::vector<Tensor> params, double learning_rate, double beta1,
       double beta2, double eps = 1e-8);

  void Step(const std::vector<Tensor>& grads);
  long steps() const { return steps_; }

 private:
  std::vector<Tensor> params_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  double lr_;
  double beta1_;
  double beta2_;
  double eps_;
  long steps_ = 0;
};

}  // namespace imbal::nn

#endif  // IMBAL_NN_LAYERS_H_
