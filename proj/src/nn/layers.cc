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


#include "imbal/nn/layers.h"

#include <cmath>
#include <stdexcept>

namespace imbal::nn {

Tensor ParamStore::Add(std::string name, Matrix init) {
  for (const auto& [n, t] : entries_) {
    if (n == name) throw std::logic_error("duplicate parameter " + name);
  }
  Tensor t = Parameter(std::move(init));
  entries_.emplace_back(std::move(name), t);
  return t;
}

std::vector<Tensor> ParamStore::Tensors() const {
  std::vector<Tensor> out;
  out.reserve(entries_.size());
  for (const auto& [n, t] : entries_) out.push_back(t);
  return out;
}

size_t ParamStore::NumScalars() const {
  size_t total = 0;
  for (const auto& [n, t] : entries_) total += t.value().size();
  return total;
}

void ParamStore::CopyValuesFrom(const ParamStore& other) {
  if (other.entries_.size() != entries_.size()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  for (size_t i = 0; i < entries_.size(); ++i) {
    const auto& [name, src] = other.entries_[i];
    auto& dst = entries_[i].second;
    if (name != entries_[i].first || src.rows() != dst.rows() ||
        src.cols() != dst.cols()) {
      throw std::invalid_argument("parameter layout mismatch at " + name);
    }
    dst.mutable_value() = src.value();
  }
}

const Tensor& ParamStore::Find(const std::string& name) const {
  for (const auto& [n, t] : entries_) {
    if (n == name) return t;
  }
  throw std::out_of_range("no parameter named " + name);
}

Matrix FanInUniform(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in,
                    Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Matrix m(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.Uniform(-bound, bound);
  }
  return m;
}

Linear Linear::Create(ParamStore& store, const std::string& name,
                      Eigen::Index in, Eigen::Index out, Rng& rng,
                      bool with_bias) {
  Linear l;
  l.weight = store.Add(name + ".weight", FanInUniform(in, out, in, rng));
  if (with_bias) l.bias = store.Add(name + ".bias", FanInUniform(1, out, in, rng));
  return l;
}

Tensor Linear::operator()(const Tensor& x) const {
  Tensor y = MatMul(x, weight);
  if (bias.defined()) y = y + BroadcastRows(bias, y.rows());
  return y;
}

CrossLayer CrossLayer::Create(ParamStore& store, const std::string& name,
                              Eigen::Index dim, Rng& rng) {
  CrossLayer c;
  c.weight = store.Add(name + ".weight", FanInUniform(dim, 1, dim, rng));
  c.bias = store.Add(name + ".bias", Matrix::Zero(1, dim));
  return c;
}

Tensor CrossLayer::operator()(const Tensor& x0, const Tensor& xn) const {
  if (x0.cols() != xn.cols() || xn.cols() != weight.rows()) {
    throw std::invalid_argument("crosslayer: dimension mismatch");
  }
  const Eigen::Index d = xn.cols();
  Tensor s = MatMul(xn, weight);  // n x 1
  return x0 * BroadcastCols(s, d) + BroadcastRows(bias, xn.rows()) + xn;
}

LayerNorm LayerNorm::Create(ParamStore& store, const std::string& name,
                            Eigen::Index dim) {
  LayerNorm ln;
  ln.gain = store.Add(name + ".gain", Matrix::Ones(1, dim));
  ln.bias = store.Add(name + ".bias", Matrix::Zero(1, dim));
  return ln;
}

Tensor LayerNorm::operator()(const Tensor& x) const {
  const Eigen::Index d = x.cols();
  const Eigen::Index n = x.rows();
  Tensor centered = x - BroadcastCols(RowMeans(x), d);
  Tensor var = RowMeans(Square(centered));
  Tensor inv_std = Pow(AddScalar(var, eps), -0.5);
  Tensor normed = centered * BroadcastCols(inv_std, d);
  return normed * BroadcastRows(gain, n) + BroadcastRows(bias, n);
}

Adam::Adam(std::vector<Tensor> params, double learning_rate, double beta1,
           double beta2, double eps)
    : params_(std::move(params)),
      lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(eps) {
  for (const auto& p : params_) {
    m_.push_back(Matrix::Zero(p.rows(), p.cols()));
    v_.push_back(Matrix::Zero(p.rows(), p.cols()));
  }
}

void Adam::Step(const std::vector<Tensor>& grads) {
  if (grads.size() != params_.size()) {
    throw std::invalid_argument("Adam::Step: gradient count mismatch");
  }
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  for (size_t i = 0; i < params_.size(); ++i) {
    const Matrix& g = grads[i].value();
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g.cwiseProduct(g);
    params_[i].mutable_value().array() -=
        lr_ * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + eps_);
  }
}

}  // namespace imbal::nn
