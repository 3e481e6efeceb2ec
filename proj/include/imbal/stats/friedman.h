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


#ifndef IMBAL_STATS_FRIEDMAN_H_
#define IMBAL_STATS_FRIEDMAN_H_

#include <Eigen/Dense>

#include "json.hpp"

namespace imbal::stats {

struct FriedmanResult {
  int n = 0;  // datasets (rows)
  int k = 0;  // methods (columns)
  double chi2 = 0;
  double f = 0;  // Iman-Davenport statistic
  double p = 1;  // upper tail of F(df1, df2)
  double df1 = 0;
  double df2 = 0;
  // chi2 reached n(k - 1): every dataset ranks the methods identically, the
  // F denominator vanishes and f is +infinity with p = 0.
  bool divergent = false;

  nlohmann::json ToJson() const;
};

// Friedman chi-square on the mean ranks of an n x k rank matrix and its
// Iman-Davenport F = (n - 1) chi2 / (n (k - 1) - chi2). With tie_correction
// chi2 is divided by 1 - sum(t^3 - t) / (n k (k^2 - 1)) over tie groups.
// Requires n >= 2 and k >= 2.
FriedmanResult FriedmanImanDavenport(const Eigen::MatrixXd& ranks,
                                     bool tie_correction = false);

// P(F(df1, df2) > f) through the regularised incomplete beta function.
double FUpperTail(double f, double df1, double df2);

}  // namespace imbal::stats

#endif  // IMBAL_STATS_FRIEDMAN_H_
