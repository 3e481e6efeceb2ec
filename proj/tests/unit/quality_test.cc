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


#include <algorithm>
#include <cmath>
#include <memory>

#include <doctest.h>

#include "imbal/bench/toy_data.h"
#include "imbal/common/random.h"
#include "imbal/quality/gen_quality.h"

namespace imbal::quality {
namespace {

struct Toy {
  std::shared_ptr<tabular::PreprocessorModel> model;
  tabular::EncodedMatrix encoded;
};

Toy MakeToy(size_t rows, uint64_t seed) {
  bench::ToyDataSpec spec;
  spec.rows = rows;
  spec.seed = seed;
  const tabular::TabularFrame frame = bench::MakeToyData(spec);
  auto model = std::make_shared<tabular::PreprocessorModel>(
      tabular::PreprocessorModel::Fit(frame, bench::ToySchema()));
  return {model, model->Transform(frame)};
}

double Trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double area = 0;
  for (size_t i = 1; i < x.size(); ++i) area += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return area;
}

}  // namespace

TEST_CASE("rmse against the identity line") {
  CHECK(Rmse({0.2, 0.4}, {0.3, 0.5}) == doctest::Approx(0.1).epsilon(1e-12));
  const std::vector<double> m = {0.1, 0.5, 0.9, 0.3};
  CHECK(Rmse(m, {0, 0, 0, 0}) == doctest::Approx(std::sqrt((0.01 + 0.25 + 0.81 + 0.09) / 4)));
  CHECK(Rmse(m, m) == 0.0);
  CHECK_THROWS_AS(Rmse({}, {}), std::invalid_argument);
}

TEST_CASE("pearson matches the sum-of-products formula") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 2 + rng.Index(60);
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = rng.Normal();
      y[i] = 0.6 * x[i] + rng.Normal();
    }
    long double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
      sx += x[i];
      sy += y[i];
      sxy += static_cast<long double>(x[i]) * y[i];
      sxx += static_cast<long double>(x[i]) * x[i];
      syy += static_cast<long double>(y[i]) * y[i];
    }
    const long double nn = n;
    const long double oracle = (nn * sxy - sx * sy) /
                               std::sqrt((nn * sxx - sx * sx) * (nn * syy - sy * sy));
    const auto r = Pearson(x, y);
    REQUIRE(r.has_value());
    CHECK(std::abs(*r - static_cast<double>(oracle)) < 1e-12);
  }
  CHECK_FALSE(Pearson({1, 1, 1}, {1, 2, 3}).has_value());
  CHECK_FALSE(Pearson({1}, {1}).has_value());
  CHECK(*Pearson({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("dimension-wise statistics of a copy agree exactly") {
  const Toy toy = MakeToy(300, 2);
  const auto names = EncodedColumnNames(*toy.model);
  REQUIRE(names.size() == static_cast<size_t>(toy.encoded.values.cols()));
  const DimwiseStats s = DimwiseStatistics(toy.encoded, toy.encoded, names);
  CHECK(s.means.rmse == 0.0);
  CHECK(s.stds.rmse == 0.0);
  REQUIRE(s.means.pearson.has_value());
  CHECK(*s.means.pearson == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.means.real.size() == names.size());
  CHECK(names.back().find('=') != std::string::npos);

  tabular::EncodedMatrix shifted = toy.encoded;
  shifted.values.array() += 0.1;
  CHECK(DimwiseStatistics(toy.encoded, shifted, names).means.rmse == doctest::Approx(0.1));
  CHECK(DimwiseStatistics(toy.encoded, shifted, names).stds.rmse == doctest::Approx(0.0).epsilon(1e-12));

  tabular::EncodedMatrix wrong = toy.encoded;
  wrong.layout.spans.clear();
  CHECK_THROWS_AS(DimwiseStatistics(toy.encoded, wrong, names), std::invalid_argument);
}

TEST_CASE("ridge, r-squared and weighted f1 match reference values") {
  Eigen::MatrixXd x(8, 2);
  x << 0.1, 0.5, 0.3, 0.2, 0.7, 0.9, 0.2, 0.4, 0.9, 0.1, 0.5, 0.5, 0.6, 0.3, 0.4, 0.8;
  Eigen::VectorXd y(8);
  y << 0.3, 0.1, 0.8, 0.35, 0.2, 0.5, 0.33, 0.7;
  // Reference values from scikit-learn Ridge(alpha=1), r2_score and f1_score.
  const RidgeFit fit = FitRidge(x, y, 1.0);
  CHECK(fit.coefficients(0) == doctest::Approx(0.06394028846466905).epsilon(1e-12));
  CHECK(fit.coefficients(1) == doctest::Approx(0.2893757529058094).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(0.24659133086615367).epsilon(1e-12));
  Eigen::MatrixXd t(2, 2);
  t << 0.25, 0.6, 0.8, 0.4;
  Eigen::VectorXd yt(2);
  yt << 0.45, 0.4;
  const Eigen::VectorXd pred = (t * fit.coefficients).array() + fit.intercept;
  CHECK(*RSquared(yt, pred) == doctest::Approx(0.7020214829770315).epsilon(1e-10));
  CHECK_FALSE(RSquared(Eigen::VectorXd::Constant(3, 2.0), Eigen::VectorXd::Zero(3)).has_value());
  CHECK(WeightedF1({0, 0, 1, 1, 2, 2, 2}, {0, 1, 1, 1, 2, 0, 2}) == doctest::Approx(0.7142857142857143).epsilon(1e-12));
  CHECK(WeightedF1({0, 0, 0, 1}, {0, 0, 2, 2}) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(WeightedF1({1, 2, 1}, {1, 2, 1}) == 1.0);
}

TEST_CASE("dimension-wise prediction has one entry per variable") {
  const Toy toy = MakeToy(400, 3);
  const PredictionPanel p = DimwisePrediction(toy.encoded, toy.encoded, *toy.model, 7);
  // Two numeric columns and one categorical variable.
  REQUIRE(p.panel.names.size() == 3);
  CHECK(p.skipped.empty());
  CHECK(p.panel.real == p.panel.synth);
  CHECK(p.panel.rmse == 0.0);
  CHECK(p.panel.names[2] == toy.model->schema().columns[p.panel.names.size() - 1].name);
}

TEST_CASE("r-squared of an independent numeric target is not positive") {
  Toy toy = MakeToy(600, 4);
  Rng rng(5);
  for (Eigen::Index r = 0; r < toy.encoded.values.rows(); ++r) toy.encoded.values(r, 0) = rng.Uniform();
  const PredictionPanel p = DimwisePrediction(toy.encoded, toy.encoded, *toy.model, 8);
  CHECK(p.panel.real[0] < 0.05);
}

TEST_CASE("prediction skips a single-category variable") {
  Toy toy = MakeToy(200, 5);
  const auto& span = toy.encoded.layout.spans[0];
  toy.encoded.values.middleCols(static_cast<Eigen::Index>(span.offset), static_cast<Eigen::Index>(span.width)).setZero();
  toy.encoded.values.col(static_cast<Eigen::Index>(span.offset)).setOnes();
  const PredictionPanel p = DimwisePrediction(toy.encoded, toy.encoded, *toy.model, 9);
  CHECK(p.panel.names.size() == 2);
  REQUIRE(p.skipped.size() == 1);
  CHECK(p.skipped[0].find("single observed category") != std::string::npos);
}

TEST_CASE("kde integrates to one and peaks at a point mass") {
  const std::vector<double> grid = KdeGrid();
  REQUIRE(grid.size() == 512);
  CHECK(grid.front() == doctest::Approx(-0.05));
  CHECK(grid.back() == doctest::Approx(1.05));
  const std::vector<double> point = GaussianKde({0.5, 0.5, 0.5}, grid, kKdeBandwidth);
  CHECK(std::abs(Trapezoid(grid, point) - 1.0) < 1e-3);
  const auto peak = static_cast<size_t>(std::max_element(point.begin(), point.end()) - point.begin());
  CHECK(std::abs(grid[peak] - 0.5) < 0.5 * (grid[1] - grid[0]) + 1e-12);
  CHECK(point[peak] == doctest::Approx(1.0 / (0.02 * std::sqrt(2 * M_PI))).epsilon(1e-2));

  Rng rng(6);
  std::vector<double> values(300);
  for (double& v : values) v = rng.Uniform(0.1, 0.9);
  const std::vector<double> spread = GaussianKde(values, grid, kKdeBandwidth);
  CHECK(std::all_of(spread.begin(), spread.end(), [](double d) { return d >= 0; }));
  CHECK(std::abs(Trapezoid(grid, spread) - 1.0) < 1e-3);
}

TEST_CASE("category counts follow real frequency and show missing categories") {
  const Toy toy = MakeToy(500, 7);
  const auto& span = toy.encoded.layout.spans[0];
  tabular::EncodedMatrix synth = toy.encoded;
  // Move every synthetic row into the first category.
  synth.values.middleCols(static_cast<Eigen::Index>(span.offset), static_cast<Eigen::Index>(span.width)).setZero();
  synth.values.col(static_cast<Eigen::Index>(span.offset)).setOnes();
  const UnivariateSummaries u = Univariate(toy.encoded, synth, *toy.model);
  CHECK(u.kde.size() == 2);
  REQUIRE(u.counts.size() == 1);
  const CategoryCounts& c = u.counts[0];
  REQUIRE(c.categories.size() == span.width);
  CHECK(std::is_sorted(c.real.rbegin(), c.real.rend()));
  size_t real_total = 0, synth_total = 0, zeros = 0;
  for (size_t k = 0; k < c.real.size(); ++k) {
    real_total += c.real[k];
    synth_total += c.synth[k];
    zeros += c.synth[k] == 0;
  }
  CHECK(real_total == 500);
  CHECK(synth_total == 500);
  CHECK(zeros == span.width - 1);
  CHECK(c.log_scale);
  const auto first = toy.model->categorical(span.column).categories[0];
  const auto pos = std::find(c.categories.begin(), c.categories.end(), first) - c.categories.begin();
  CHECK(c.synth[static_cast<size_t>(pos)] == 500);
  CHECK(u.ToJson()["kde"][0]["grid"].size() == 512);
}

}  // namespace imbal::quality
