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


#include "imbal/stats/friedman.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>

namespace imbal::stats {

nlohmann::json FriedmanResult::ToJson() const {
  nlohmann::json j = {{"n", n}, {"k", k}, {"chi2", chi2}, {"p", p},
                      {"df1", df1}, {"df2", df2}, {"divergent", divergent}};
  j["f"] = divergent ? nlohmann::json("inf") : nlohmann::json(f);
  return j;
}

double FUpperTail(double f, double df1, double df2) {
  if (!(df1 > 0 && df2 > 0)) throw std::invalid_argument("F tail: degrees of freedom must be positive");
  if (std::isinf(f)) return 0.0;
  if (f <= 0) return 1.0;
  // P(F > f) = I_x(df2 / 2, df1 / 2) with x = df2 / (df2 + df1 f).
  return boost::math::ibeta(df2 / 2, df1 / 2, df2 / (df2 + df1 * f));
}

FriedmanResult FriedmanImanDavenport(const Eigen::MatrixXd& ranks, bool tie_correction) {
  const auto n = static_cast<double>(ranks.rows());
  const auto k = static_cast<double>(ranks.cols());
  if (ranks.rows() < 2 || ranks.cols() < 2) {
    throw std::invalid_argument("friedman: need at least two datasets and two methods");
  }
  if (!ranks.allFinite()) throw std::invalid_argument("friedman: rank matrix has gaps");
  FriedmanResult r;
  r.n = static_cast<int>(ranks.rows());
  r.k = static_cast<int>(ranks.cols());
  r.df1 = k - 1;
  r.df2 = (k - 1) * (n - 1);
  const Eigen::RowVectorXd mean_ranks = ranks.colwise().mean();
  r.chi2 = 12 * n / (k * (k + 1)) * mean_ranks.squaredNorm() - 3 * n * (k + 1);
  if (tie_correction) {
    double ties = 0;
    for (Eigen::Index i = 0; i < ranks.rows(); ++i) {
      std::map<double, double> groups;
      for (Eigen::Index j = 0; j < ranks.cols(); ++j) groups[ranks(i, j)] += 1;
      for (const auto& [rank, t] : groups) ties += t * t * t - t;
    }
    const double denom = 1 - ties / (n * k * (k * k - 1));
    if (denom > 0) r.chi2 /= denom;
  }
  r.chi2 = std::max(r.chi2, 0.0);  // rounding can dip just below zero
  const double room = n * (k - 1) - r.chi2;
  if (room <= 1e-12 * n * (k - 1)) {
    r.divergent = true;
    r.f = std::numeric_limits<double>::infinity();
    r.p = 0;
    return r;
  }
  r.f = (n - 1) * r.chi2 / room;
  r.p = FUpperTail(r.f, r.df1, r.df2);
  return r;
}

}  // namespace imbal::stats
