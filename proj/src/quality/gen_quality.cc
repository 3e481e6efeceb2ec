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


#include "imbal/quality/gen_quality.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "imbal/common/random.h"
#include "imbal/eval/classifiers.h"

namespace imbal::quality {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void RequireSameLayout(const tabular::EncodedMatrix& real,
                       const tabular::EncodedMatrix& synth) {
  if (!(real.layout == synth.layout) || real.values.cols() != synth.values.cols()) {
    throw std::invalid_argument("quality: real and synthetic layouts differ");
  }
}

// Encoded columns of one original variable.
struct Variable {
  std::string name;
  Index first = 0;
  Index width = 1;
  bool categorical = false;
  size_t column = 0;  // feature column in the schema
};

std::vector<Variable> Variables(const tabular::PreprocessorModel& model) {
  const auto& layout = model.layout();
  const auto& columns = model.schema().columns;
  std::vector<Variable> vars;
  for (size_t i = 0; i < layout.numeric_columns.size(); ++i) {
    vars.push_back({columns[layout.numeric_columns[i]].name, static_cast<Index>(i), 1, false,
                    layout.numeric_columns[i]});
  }
  for (const auto& span : layout.spans) {
    vars.push_back({columns[span.column].name, static_cast<Index>(span.offset),
                    static_cast<Index>(span.width), true, span.column});
  }
  return vars;
}

MatrixXd DropColumns(const MatrixXd& x, Index first, Index width) {
  MatrixXd out(x.rows(), x.cols() - width);
  out << x.leftCols(first), x.rightCols(x.cols() - first - width);
  return out;
}

std::vector<int> ArgmaxCodes(const MatrixXd& block) {
  std::vector<int> codes(static_cast<size_t>(block.rows()));
  for (Index r = 0; r < block.rows(); ++r) {
    Index best = 0;
    block.row(r).maxCoeff(&best);
    codes[static_cast<size_t>(r)] = static_cast<int>(best);
  }
  return codes;
}

MatrixXd Rows(const MatrixXd& x, const std::vector<size_t>& rows) {
  MatrixXd out(static_cast<Index>(rows.size()), x.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = x.row(static_cast<Index>(rows[i]));
  return out;
}

template <typename T>
std::vector<T> Pick(const std::vector<T>& v, const std::vector<size_t>& rows) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (size_t r : rows) out.push_back(v[r]);
  return out;
}

// Score of predicting `var` from the other variables within one dataset, or
// a reason for skipping it.
struct Score {
  std::optional<double> value;
  std::string reason;
};

Score PredictVariable(const MatrixXd& data, const Variable& var, uint64_t seed) {
  const auto n = static_cast<size_t>(data.rows());
  if (n < 10) return {std::nullopt, "fewer than 10 rows"};
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  const auto n_test = static_cast<size_t>(std::max<long long>(1, std::llround(0.1 * static_cast<double>(n))));
  const std::vector<size_t> test(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  const std::vector<size_t> train(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  const MatrixXd x = DropColumns(data, var.first, var.width);
  const MatrixXd x_train = Rows(x, train), x_test = Rows(x, test);

  if (!var.categorical) {
    const VectorXd y = data.col(var.first);
    VectorXd y_train(static_cast<Index>(train.size())), y_test(static_cast<Index>(test.size()));
    for (size_t i = 0; i < train.size(); ++i) y_train(static_cast<Index>(i)) = y(static_cast<Index>(train[i]));
    for (size_t i = 0; i < test.size(); ++i) y_test(static_cast<Index>(i)) = y(static_cast<Index>(test[i]));
    const RidgeFit fit = FitRidge(x_train, y_train, 1.0);
    const VectorXd pred = (x_test * fit.coefficients).array() + fit.intercept;
    const auto r2 = RSquared(y_test, pred);
    if (!r2) return {std::nullopt, "constant test target"};
    return {r2, ""};
  }
  const std::vector<int> codes = ArgmaxCodes(data.middleCols(var.first, var.width));
  const std::vector<int> y_train = Pick(codes, train), y_test = Pick(codes, test);
  if (std::set<int>(y_train.begin(), y_train.end()).size() < 2) {
    return {std::nullopt, "single observed category in the training split"};
  }
  eval::RandomForest forest(eval::ForestOptions{}, DeriveSeed(seed, "forest"));
  forest.FitMulticlass(x_train, y_train, static_cast<int>(var.width));
  return {WeightedF1(y_test, forest.Predict(x_test)), ""};
}

}  // namespace

double Rmse(const std::vector<double>& real, const std::vector<double>& synth) {
  if (real.size() != synth.size() || real.empty()) {
    throw std::invalid_argument("rmse: need equal, non-empty inputs");
  }
  double total = 0;
  for (size_t i = 0; i < real.size(); ++i) total += (synth[i] - real[i]) * (synth[i] - real[i]);
  return std::sqrt(total / static_cast<double>(real.size()));
}

std::optional<double> Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void Panel::Add(std::string name, double real_value, double synth_value) {
  names.push_back(std::move(name));
  real.push_back(real_value);
  synth.push_back(synth_value);
}

void Panel::Summarise() {
  rmse = real.empty() ? 0.0 : Rmse(real, synth);
  pearson = Pearson(real, synth);
}

nlohmann::json Panel::ToJson() const {
  nlohmann::json j = {{"names", names}, {"real", real}, {"synth", synth}, {"rmse", rmse}};
  j["pearson"] = pearson ? nlohmann::json(*pearson) : nlohmann::json(nullptr);
  return j;
}

std::vector<std::string> EncodedColumnNames(const tabular::PreprocessorModel& model) {
  const auto& layout = model.layout();
  const auto& columns = model.schema().columns;
  std::vector<std::string> names;
  for (size_t c : layout.numeric_columns) names.push_back(columns[c].name);
  for (const auto& span : layout.spans) {
    for (const auto& category : model.categorical(span.column).categories) {
      names.push_back(columns[span.column].name + "=" + category);
    }
  }
  return names;
}

DimwiseStats DimwiseStatistics(const tabular::EncodedMatrix& real,
                               const tabular::EncodedMatrix& synth,
                               const std::vector<std::string>& names) {
  RequireSameLayout(real, synth);
  if (real.values.rows() == 0 || synth.values.rows() == 0) {
    throw std::invalid_argument("quality: empty input");
  }
  if (static_cast<Index>(names.size()) != real.values.cols()) {
    throw std::invalid_argument("quality: one name per encoded column required");
  }
  const auto population_sd = [](const VectorXd& v) {
    return std::sqrt((v.array() - v.mean()).square().mean());
  };
  DimwiseStats out;
  for (Index c = 0; c < real.values.cols(); ++c) {
    const auto i = static_cast<size_t>(c);
    out.means.Add(names[i], real.values.col(c).mean(), synth.values.col(c).mean());
    out.stds.Add(names[i], population_sd(real.values.col(c)), population_sd(synth.values.col(c)));
  }
  out.means.Summarise();
  out.stds.Summarise();
  return out;
}

RidgeFit FitRidge(const MatrixXd& x, const VectorXd& y, double alpha) {
  if (x.rows() != y.size() || x.rows() == 0) throw std::invalid_argument("ridge: bad shapes");
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  const MatrixXd xc = x.rowwise() - x_mean;
  const VectorXd yc = y.array() - y_mean;
  MatrixXd gram = xc.transpose() * xc;
  gram.diagonal().array() += alpha;
  RidgeFit fit;
  fit.coefficients = gram.ldlt().solve(xc.transpose() * yc);
  fit.intercept = y_mean - x_mean.dot(fit.coefficients);
  return fit;
}

std::optional<double> RSquared(const VectorXd& truth, const VectorXd& pred) {
  const double ss_tot = (truth.array() - truth.mean()).square().sum();
  if (ss_tot == 0) return std::nullopt;
  return 1.0 - (truth - pred).squaredNorm() / ss_tot;
}

double WeightedF1(const std::vector<int>& truth, const std::vector<int>& pred) {
  if (truth.size() != pred.size() || truth.empty()) {
    throw std::invalid_argument("f1: need equal, non-empty inputs");
  }
  double total = 0;
  for (int c : std::set<int>(truth.begin(), truth.end())) {
    double tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
      tp += truth[i] == c && pred[i] == c;
      fp += truth[i] != c && pred[i] == c;
      fn += truth[i] == c && pred[i] != c;
    }
    const double f1 = tp == 0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);
    total += f1 * (tp + fn);
  }
  return total / static_cast<double>(truth.size());
}

PredictionPanel DimwisePrediction(const tabular::EncodedMatrix& real,
                                  const tabular::EncodedMatrix& synth,
                                  const tabular::PreprocessorModel& model,
                                  uint64_t seed) {
  RequireSameLayout(real, synth);
  if (!(real.layout == model.layout())) {
    throw std::invalid_argument("quality: data layout differs from the preprocessor");
  }
  PredictionPanel out;
  const std::vector<Variable> vars = Variables(model);
  if (vars.size() < 2) {
    throw std::invalid_argument("quality: prediction needs at least two variables");
  }
  for (size_t v = 0; v < vars.size(); ++v) {
    const uint64_t var_seed = DeriveSeed(seed, v);
    const Score r = PredictVariable(real.values, vars[v], var_seed);
    const Score s = PredictVariable(synth.values, vars[v], var_seed);
    if (!r.value || !s.value) {
      out.skipped.push_back(vars[v].name + ": " + (r.value ? "synthetic " + s.reason : "real " + r.reason));
      continue;
    }
    out.panel.Add(vars[v].name, *r.value, *s.value);
  }
  out.panel.Summarise();
  return out;
}

std::vector<double> KdeGrid() {
  std::vector<double> grid(kKdeGridPoints);
  const double step = (kKdeGridHigh - kKdeGridLow) / (kKdeGridPoints - 1);
  for (int i = 0; i < kKdeGridPoints; ++i) grid[static_cast<size_t>(i)] = kKdeGridLow + step * i;
  return grid;
}

std::vector<double> GaussianKde(const std::vector<double>& values,
                                const std::vector<double>& grid, double bandwidth) {
  if (values.empty()) return std::vector<double>(grid.size(), 0.0);
  const double norm = 1.0 / (static_cast<double>(values.size()) * bandwidth *
                             std::sqrt(2 * std::numbers::pi));
  std::vector<double> density(grid.size(), 0.0);
  for (size_t g = 0; g < grid.size(); ++g) {
    double total = 0;
    for (double v : values) {
      const double u = (grid[g] - v) / bandwidth;
      total += std::exp(-0.5 * u * u);
    }
    density[g] = norm * total;
  }
  return density;
}

nlohmann::json UnivariateSummaries::ToJson() const {
  nlohmann::json j;
  j["kde"] = nlohmann::json::array();
  for (const KdeCurve& k : kde) {
    j["kde"].push_back({{"column", k.column}, {"grid", k.grid}, {"real", k.real}, {"synth", k.synth}});
  }
  j["counts"] = nlohmann::json::array();
  for (const CategoryCounts& c : counts) {
    j["counts"].push_back({{"column", c.column}, {"categories", c.categories}, {"real", c.real},
                           {"synth", c.synth}, {"log_scale", c.log_scale}});
  }
  return j;
}

UnivariateSummaries Univariate(const tabular::EncodedMatrix& real,
                               const tabular::EncodedMatrix& synth,
                               const tabular::PreprocessorModel& model) {
  RequireSameLayout(real, synth);
  UnivariateSummaries out;
  const std::vector<double> grid = KdeGrid();
  const auto column_values = [](const MatrixXd& m, Index c) {
    return std::vector<double>(m.col(c).data(), m.col(c).data() + m.rows());
  };
  for (const Variable& var : Variables(model)) {
    if (!var.categorical) {
      out.kde.push_back({var.name, grid,
                         GaussianKde(column_values(real.values, var.first), grid, kKdeBandwidth),
                         GaussianKde(column_values(synth.values, var.first), grid, kKdeBandwidth)});
      continue;
    }
    const auto width = static_cast<size_t>(var.width);
    std::vector<size_t> real_counts(width, 0), synth_counts(width, 0);
    for (int c : ArgmaxCodes(real.values.middleCols(var.first, var.width))) ++real_counts[static_cast<size_t>(c)];
    for (int c : ArgmaxCodes(synth.values.middleCols(var.first, var.width))) ++synth_counts[static_cast<size_t>(c)];
    std::vector<size_t> order(width);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return real_counts[a] > real_counts[b]; });
    CategoryCounts counts;
    counts.column = var.name;
    const auto& categories = model.categorical(var.column).categories;
    for (size_t k : order) {
      counts.categories.push_back(categories[k]);
      counts.real.push_back(real_counts[k]);
      counts.synth.push_back(synth_counts[k]);
    }
    out.counts.push_back(std::move(counts));
  }
  return out;
}

}  // namespace imbal::quality
