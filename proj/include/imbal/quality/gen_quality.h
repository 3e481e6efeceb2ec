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


#ifndef IMBAL_QUALITY_GEN_QUALITY_H_
#define IMBAL_QUALITY_GEN_QUALITY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "imbal/tabular/preprocessor.h"
#include "json.hpp"

namespace imbal::quality {

// sqrt(mean((synth - real)^2)): distance of the scatter from the identity line.
double Rmse(const std::vector<double>& real, const std::vector<double>& synth);

// Sample correlation by the two-pass formula; empty when either side has
// zero variance or fewer than two points.
std::optional<double> Pearson(const std::vector<double>& x,
                              const std::vector<double>& y);

// Paired per-dimension values with their agreement summary.
struct Panel {
  std::vector<std::string> names;
  std::vector<double> real;
  std::vector<double> synth;
  double rmse = 0;
  std::optional<double> pearson;

  void Add(std::string name, double real_value, double synth_value);
  void Summarise();
  nlohmann::json ToJson() const;
};

struct DimwiseStats {
  Panel means;
  Panel stds;  // population standard deviations
};

// Encoded column names: numeric columns by name, one-hot columns as
// "column=category".
std::vector<std::string> EncodedColumnNames(const tabular::PreprocessorModel& model);

// Per encoded column mean and standard deviation of real versus synthetic
// rows. Throws when the layouts differ.
DimwiseStats DimwiseStatistics(const tabular::EncodedMatrix& real,
                               const tabular::EncodedMatrix& synth,
                               const std::vector<std::string>& names);

// Ridge regression (alpha, unpenalised intercept).
struct RidgeFit {
  Eigen::VectorXd coefficients;
  double intercept = 0;
};
RidgeFit FitRidge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double alpha);

// 1 - SS_res / SS_tot with SS_tot about the mean of `truth`; empty when the
// truth is constant.
std::optional<double> RSquared(const Eigen::VectorXd& truth, const Eigen::VectorXd& pred);

// Support-weighted mean of per-class F1 over the classes in `truth`.
double WeightedF1(const std::vector<int>& truth, const std::vector<int>& pred);

struct PredictionPanel {
  Panel panel;
  std::vector<std::string> skipped;  // "<variable>: <reason>"
};

// One entry per original variable (one-hot groups act as one variable; the
// class label is never used). Within each dataset separately the rows are
// shuffled with the same seed and split 90/10; the other variables predict
// the target: numeric targets by ridge regression (alpha 1) scored with
// R^2, categorical targets by the fixed random forest scored with weighted
// F1. A variable is skipped when either training part shows a single
// category or either test target is constant.
PredictionPanel DimwisePrediction(const tabular::EncodedMatrix& real,
                                  const tabular::EncodedMatrix& synth,
                                  const tabular::PreprocessorModel& model,
                                  uint64_t seed);

inline constexpr double kKdeBandwidth = 0.02;
inline constexpr int kKdeGridPoints = 512;
inline constexpr double kKdeGridLow = -0.05;
inline constexpr double kKdeGridHigh = 1.05;

// kKdeGridPoints evenly spaced points from kKdeGridLow to kKdeGridHigh.
std::vector<double> KdeGrid();
// Gaussian kernel density estimate of `values` at each grid point.
std::vector<double> GaussianKde(const std::vector<double>& values,
                                const std::vector<double>& grid, double bandwidth);

struct KdeCurve {
  std::string column;
  std::vector<double> grid;
  std::vector<double> real;
  std::vector<double> synth;
};

struct CategoryCounts {
  std::string column;
  std::vector<std::string> categories;  // descending real frequency
  std::vector<size_t> real;
  std::vector<size_t> synth;
  bool log_scale = true;
};

struct UnivariateSummaries {
  std::vector<KdeCurve> kde;  // numeric columns, scaled space
  std::vector<CategoryCounts> counts;
  nlohmann::json ToJson() const;
};

// Category counts use the argmax of each one-hot span; ties in real
// frequency keep vocabulary order.
UnivariateSummaries Univariate(const tabular::EncodedMatrix& real,
                               const tabular::EncodedMatrix& synth,
                               const tabular::PreprocessorModel& model);

}  // namespace imbal::quality

#endif  // IMBAL_QUALITY_GEN_QUALITY_H_
