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


#ifndef IMBAL_NN_AUTOGRAD_H_
#define IMBAL_NN_AUTOGRAD_H_

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace imbal::nn {

using Matrix = Eigen::MatrixXd;

class Tensor;

// Receives the op's own output, the upstream gradient and which parents lie
// on a path to a requested input; returns one gradient per parent (undefined
// where not needed). Written in terms of differentiable ops so gradients of
// gradients work.
using BackwardFn = std::function<std::vector<Tensor>(
    const Tensor& self, const Tensor& grad, const std::vector<bool>& needed)>;

struct Node {
  Matrix value;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  BackwardFn backward;
};

// Handle to a node of a reverse-mode computation graph. Copies share the node.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Matrix value, bool requires_grad = false);
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  bool defined() const { return node_ != nullptr; }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  const Matrix& value() const { return node_->value; }
  // For in-place parameter updates only; never mutate values inside a live
  // graph.
  Matrix& mutable_value() { return node_->value; }
  Eigen::Index rows() const { return node_->value.rows(); }
  Eigen::Index cols() const { return node_->value.cols(); }
  double item() const;
  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& shared() const { return node_; }

 private:
  std::shared_ptr<Node> node_;
};

// While alive, ops record no graph.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool GradEnabled();

Tensor Constant(Matrix value);
Tensor Parameter(Matrix value);
Tensor Detach(const Tensor& a);

// Elementwise, identical shapes.
Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator*(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& a, double s);
Tensor AddScalar(const Tensor& a, double s);
Tensor Neg(const Tensor& a);

Tensor MatMul(const Tensor& a, const Tensor& b);
Tensor Transpose(const Tensor& a);

// 1 x d row repeated to n x d; n x 1 column repeated to n x d; 1 x 1 to r x c.
Tensor BroadcastRows(const Tensor& row, Eigen::Index n);
Tensor BroadcastCols(const Tensor& col, Eigen::Index d);
Tensor Expand(const Tensor& scalar, Eigen::Index rows, Eigen::Index cols);

Tensor ColumnSums(const Tensor& a);  // n x d -> 1 x d
Tensor RowSums(const Tensor& a);     // n x d -> n x 1
Tensor Sum(const Tensor& a);         // -> 1 x 1
Tensor Mean(const Tensor& a);
Tensor RowMeans(const Tensor& a);

Tensor Exp(const Tensor& a);
Tensor Log(const Tensor& a);
Tensor Pow(const Tensor& a, double p);
Tensor Square(const Tensor& a);
Tensor Sigmoid(const Tensor& a);
Tensor Softplus(const Tensor& a);
Tensor LeakyRelu(const Tensor& a, double slope);
Tensor Relu(const Tensor& a);
Tensor Clamp(const Tensor& a, double lo, double hi);
// Row-wise softmax.
Tensor Softmax(const Tensor& a);

Tensor ConcatCols(std::span<const Tensor> parts);
Tensor SliceCols(const Tensor& a, Eigen::Index start, Eigen::Index width);
Tensor PadCols(const Tensor& a, Eigen::Index start, Eigen::Index total);

// Gradients of the scalar `output` with respect to `inputs`. Inputs the
// output does not depend on get zero gradients. With create_graph the result
// is itself differentiable.
std::vector<Tensor> Grad(const Tensor& output, std::span<const Tensor> inputs,
                         bool create_graph = false);

}  // namespace imbal::nn

#endif  // IMBAL_NN_AUTOGRAD_H_
