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


#include "imbal/nn/autograd.h"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace imbal::nn {
namespace {

using Needed = std::vector<bool>;

thread_local bool grad_enabled = true;

void CheckSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(
        std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
        std::to_string(b.cols()));
  }
}

Tensor MakeResult(Matrix value, std::initializer_list<Tensor> parents,
                  BackwardFn backward) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  if (grad_enabled) {
    bool any = false;
    for (const auto& p : parents) any = any || p.requires_grad();
    if (any) {
      node->requires_grad = true;
      for (const auto& p : parents) node->parents.push_back(p.shared());
      node->backward = std::move(backward);
    }
  }
  return Tensor(std::move(node));
}

Tensor MakeResult(Matrix value, const std::vector<Tensor>& parents,
                  BackwardFn backward) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  if (grad_enabled) {
    bool any = false;
    for (const auto& p : parents) any = any || p.requires_grad();
    if (any) {
      node->requires_grad = true;
      for (const auto& p : parents) node->parents.push_back(p.shared());
      node->backward = std::move(backward);
    }
  }
  return Tensor(std::move(node));
}

// Gradient passed to a parent only if it participates in differentiation.
Tensor If(bool needed, const std::function<Tensor()>& make) {
  return needed ? make() : Tensor();
}

}  // namespace

Tensor::Tensor(Matrix value, bool requires_grad)
    : node_(std::make_shared<Node>()) {
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

double Tensor::item() const {
  if (rows() != 1 || cols() != 1) {
    throw std::logic_error("Tensor::item on non-scalar");
  }
  return node_->value(0, 0);
}

NoGradGuard::NoGradGuard() : previous_(grad_enabled) { grad_enabled = false; }
NoGradGuard::~NoGradGuard() { grad_enabled = previous_; }

bool GradEnabled() { return grad_enabled; }

Tensor Constant(Matrix value) { return Tensor(std::move(value), false); }
Tensor Parameter(Matrix value) { return Tensor(std::move(value), true); }
Tensor Detach(const Tensor& a) { return Tensor(a.value(), false); }

Tensor operator+(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "add");
  return MakeResult(a.value() + b.value(), {a, b},
                    [a, b](const Tensor&, const Tensor& g, const Needed& need) {
                      return std::vector<Tensor>{If(need[0], [&] { return g; }),
                                                 If(need[1], [&] { return g; })};
                    });
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "sub");
  return MakeResult(a.value() - b.value(), {a, b},
                    [a, b](const Tensor&, const Tensor& g, const Needed& need) {
                      return std::vector<Tensor>{If(need[0], [&] { return g; }),
                                                 If(need[1], [&] { return Neg(g); })};
                    });
}

Tensor operator*(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "mul");
  return MakeResult(a.value().cwiseProduct(b.value()), {a, b},
                    [a, b](const Tensor&, const Tensor& g, const Needed& need) {
                      return std::vector<Tensor>{If(need[0], [&] { return g * b; }),
                                                 If(need[1], [&] { return g * a; })};
                    });
}

Tensor Scale(const Tensor& a, double s) {
  return MakeResult(a.value() * s, {a}, [s](const Tensor&, const Tensor& g, const Needed&) {
    return std::vector<Tensor>{Scale(g, s)};
  });
}

Tensor AddScalar(const Tensor& a, double s) {
  return MakeResult(a.value().array() + s, {a},
                    [](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{g};
                    });
}

Tensor Neg(const Tensor& a) { return Scale(a, -1.0); }

Tensor MatMul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument(
        "matmul: inner dimension mismatch " + std::to_string(a.cols()) +
        " vs " + std::to_string(b.rows()));
  }
  return MakeResult(a.value() * b.value(), {a, b},
                    [a, b](const Tensor&, const Tensor& g, const Needed& need) {
                      return std::vector<Tensor>{
                          If(need[0], [&] { return MatMul(g, Transpose(b)); }),
                          If(need[1], [&] { return MatMul(Transpose(a), g); })};
                    });
}

Tensor Transpose(const Tensor& a) {
  return MakeResult(a.value().transpose(), {a},
                    [](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{Transpose(g)};
                    });
}

Tensor BroadcastRows(const Tensor& row, Eigen::Index n) {
  if (row.rows() != 1) throw std::invalid_argument("BroadcastRows: not a row");
  return MakeResult(row.value().replicate(n, 1), {row},
                    [](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{ColumnSums(g)};
                    });
}

Tensor BroadcastCols(const Tensor& col, Eigen::Index d) {
  if (col.cols() != 1) throw std::invalid_argument("BroadcastCols: not a column");
  return MakeResult(col.value().replicate(1, d), {col},
                    [](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{RowSums(g)};
                    });
}

Tensor Expand(const Tensor& scalar, Eigen::Index rows, Eigen::Index cols) {
  if (scalar.rows() != 1 || scalar.cols() != 1) {
    throw std::invalid_argument("Expand: not a scalar");
  }
  return MakeResult(Matrix::Constant(rows, cols, scalar.value()(0, 0)), {scalar},
                    [](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{Sum(g)};
                    });
}

Tensor ColumnSums(const Tensor& a) {
  const Eigen::Index n = a.rows();
  return MakeResult(a.value().colwise().sum(), {a},
                    [n](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{BroadcastRows(g, n)};
                    });
}

Tensor RowSums(const Tensor& a) {
  const Eigen::Index d = a.cols();
  return MakeResult(a.value().rowwise().sum(), {a},
                    [d](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{BroadcastCols(g, d)};
                    });
}

Tensor Sum(const Tensor& a) {
  const Eigen::Index r = a.rows();
  const Eigen::Index c = a.cols();
  Matrix v(1, 1);
  v(0, 0) = a.value().sum();
  return MakeResult(std::move(v), {a}, [r, c](const Tensor&, const Tensor& g, const Needed&) {
    return std::vector<Tensor>{Expand(g, r, c)};
  });
}

Tensor Mean(const Tensor& a) {
  return Scale(Sum(a), 1.0 / static_cast<double>(a.value().size()));
}

Tensor RowMeans(const Tensor& a) {
  return Scale(RowSums(a), 1.0 / static_cast<double>(a.cols()));
}

Tensor Exp(const Tensor& a) {
  return MakeResult(a.value().array().exp().matrix(), {a},
                    [](const Tensor& self, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{g * self};
                    });
}

Tensor Log(const Tensor& a) {
  return MakeResult(a.value().array().log().matrix(), {a},
                    [a](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{g * Pow(a, -1.0)};
                    });
}

Tensor Pow(const Tensor& a, double p) {
  return MakeResult(a.value().array().pow(p).matrix(), {a},
                    [a, p](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{g * Scale(Pow(a, p - 1.0), p)};
                    });
}

Tensor Square(const Tensor& a) {
  return MakeResult(a.value().array().square().matrix(), {a},
                    [a](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{g * Scale(a, 2.0)};
                    });
}

Tensor Sigmoid(const Tensor& a) {
  Matrix v = a.value().unaryExpr([](double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
  });
  return MakeResult(std::move(v), {a}, [](const Tensor& self, const Tensor& g, const Needed&) {
    return std::vector<Tensor>{g * (self * AddScalar(Neg(self), 1.0))};
  });
}

Tensor Softplus(const Tensor& a) {
  Matrix v = a.value().unaryExpr([](double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
  });
  return MakeResult(std::move(v), {a}, [a](const Tensor&, const Tensor& g, const Needed&) {
    return std::vector<Tensor>{g * Sigmoid(a)};
  });
}

Tensor LeakyRelu(const Tensor& a, double slope) {
  Matrix mask = a.value().unaryExpr(
      [slope](double x) { return x > 0 ? 1.0 : slope; });
  Matrix v = a.value().cwiseProduct(mask);
  return MakeResult(std::move(v), {a},
                    [m = Constant(std::move(mask))](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{g * m};
                    });
}

Tensor Relu(const Tensor& a) { return LeakyRelu(a, 0.0); }

Tensor Clamp(const Tensor& a, double lo, double hi) {
  Matrix mask = a.value().unaryExpr(
      [lo, hi](double x) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
  Matrix v = a.value().cwiseMax(lo).cwiseMin(hi);
  return MakeResult(std::move(v), {a},
                    [m = Constant(std::move(mask))](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{g * m};
                    });
}

Tensor Softmax(const Tensor& a) {
  Matrix row_max = a.value().rowwise().maxCoeff();
  Tensor shifted = a - BroadcastCols(Constant(std::move(row_max)), a.cols());
  Tensor e = Exp(shifted);
  return e * BroadcastCols(Pow(RowSums(e), -1.0), a.cols());
}

Tensor ConcatCols(std::span<const Tensor> parts) {
  if (parts.empty()) throw std::invalid_argument("ConcatCols: no inputs");
  const Eigen::Index n = parts[0].rows();
  Eigen::Index total = 0;
  for (const auto& p : parts) {
    if (p.rows() != n) throw std::invalid_argument("ConcatCols: row mismatch");
    total += p.cols();
  }
  Matrix v(n, total);
  std::vector<Eigen::Index> offsets;
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    v.middleCols(off, p.cols()) = p.value();
    offsets.push_back(off);
    off += p.cols();
  }
  std::vector<Tensor> parents(parts.begin(), parts.end());
  return MakeResult(std::move(v), parents,
                    [parents, offsets](const Tensor&, const Tensor& g, const Needed& need) {
                      std::vector<Tensor> out;
                      out.reserve(parents.size());
                      for (size_t i = 0; i < parents.size(); ++i) {
                        out.push_back(If(need[i], [&] {
                          return SliceCols(g, offsets[i], parents[i].cols());
                        }));
                      }
                      return out;
                    });
}

Tensor SliceCols(const Tensor& a, Eigen::Index start, Eigen::Index width) {
  if (start < 0 || width < 0 || start + width > a.cols()) {
    throw std::invalid_argument("SliceCols: out of range");
  }
  const Eigen::Index total = a.cols();
  return MakeResult(a.value().middleCols(start, width), {a},
                    [start, total](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{PadCols(g, start, total)};
                    });
}

Tensor PadCols(const Tensor& a, Eigen::Index start, Eigen::Index total) {
  if (start < 0 || start + a.cols() > total) {
    throw std::invalid_argument("PadCols: out of range");
  }
  Matrix v = Matrix::Zero(a.rows(), total);
  v.middleCols(start, a.cols()) = a.value();
  const Eigen::Index width = a.cols();
  return MakeResult(std::move(v), {a},
                    [start, width](const Tensor&, const Tensor& g, const Needed&) {
                      return std::vector<Tensor>{SliceCols(g, start, width)};
                    });
}

std::vector<Tensor> Grad(const Tensor& output, std::span<const Tensor> inputs,
                         bool create_graph) {
  if (output.rows() != 1 || output.cols() != 1) {
    throw std::invalid_argument("Grad: output must be a scalar");
  }
  std::vector<Tensor> result(inputs.size());
  auto zeros_like = [](const Tensor& t) {
    return Constant(Matrix::Zero(t.rows(), t.cols()));
  };
  if (!output.requires_grad()) {
    for (size_t i = 0; i < inputs.size(); ++i) result[i] = zeros_like(inputs[i]);
    return result;
  }

  // Iterative post-order DFS gives a topological order (parents first).
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::unordered_map<Node*, std::shared_ptr<Node>> owners;
  std::vector<std::pair<Node*, size_t>> stack{{output.node(), 0}};
  visited.insert(output.node());
  owners[output.node()] = output.shared();
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      const auto& parent = node->parents[next++];
      if (parent->requires_grad && visited.insert(parent.get()).second) {
        owners[parent.get()] = parent;
        stack.emplace_back(parent.get(), 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  // Only nodes on a path from a requested input carry useful gradients.
  std::unordered_set<Node*> reaches;
  for (const auto& in : inputs) reaches.insert(in.node());
  for (Node* node : order) {
    for (const auto& parent : node->parents) {
      if (reaches.contains(parent.get())) {
        reaches.insert(node);
        break;
      }
    }
  }

  std::optional<NoGradGuard> guard;
  if (!create_graph) guard.emplace();

  std::unordered_map<Node*, Tensor> grads;
  grads[output.node()] = Constant(Matrix::Ones(1, 1));
  std::vector<bool> needed;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (!node->backward || !reaches.contains(node)) continue;
    auto found = grads.find(node);
    if (found == grads.end()) continue;
    const Tensor g = found->second;
    needed.assign(node->parents.size(), false);
    for (size_t i = 0; i < node->parents.size(); ++i) {
      Node* p = node->parents[i].get();
      needed[i] = p->requires_grad && reaches.contains(p);
    }
    const Tensor self(owners[node]);
    std::vector<Tensor> parent_grads = node->backward(self, g, needed);
    for (size_t i = 0; i < node->parents.size(); ++i) {
      if (!needed[i] || !parent_grads[i].defined()) continue;
      Node* p = node->parents[i].get();
      auto [slot, inserted] = grads.try_emplace(p, parent_grads[i]);
      if (!inserted) slot->second = slot->second + parent_grads[i];
    }
  }
  for (size_t i = 0; i < inputs.size(); ++i) {
    auto found = grads.find(inputs[i].node());
    result[i] = found == grads.end() ? zeros_like(inputs[i]) : found->second;
    if (!create_graph) result[i] = Detach(result[i]);
  }
  return result;
}

}  // namespace imbal::nn
