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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "imbal/common/csv.h"
#include "imbal/common/random.h"
#include "imbal/tabular/frame.h"
#include "imbal/tabular/preprocessor.h"
#include "imbal/tabular/schema.h"

namespace {

using imbal::tabular::ColumnKind;
using imbal::tabular::DatasetSchema;
using imbal::tabular::PreprocessorModel;
using imbal::tabular::TabularFrame;

std::string WriteTemp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("imbal_" + name);
  std::ofstream(path) << body;
  return path.string();
}

DatasetSchema SmallSchema() {
  DatasetSchema s;
  s.target = "y";
  s.positive_label = "bad";
  s.columns = {{"x", ColumnKind::kNumerical, {}},
               {"c", ColumnKind::kCategorical, {}}};
  return s;
}

TabularFrame FrameOf(std::vector<double> x, std::vector<std::string> c,
                     std::vector<std::string> y) {
  TabularFrame f = TabularFrame::Empty(SmallSchema());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < x.size(); ++i) {
    f.columns[0].numeric.push_back(x[i]);
    f.columns[0].missing.push_back(std::isnan(x[i]));
    f.columns[1].categorical.push_back(c[i]);
    f.columns[1].missing.push_back(c[i].empty());
  }
  (void)nan;
  f.target = std::move(y);
  return f;
}

// Random mixed frame with no missing values.
TabularFrame RandomFrame(imbal::Rng& rng, size_t n, DatasetSchema& schema) {
  schema = DatasetSchema{};
  schema.target = "label";
  schema.positive_label = "1";
  const size_t num = 1 + rng.Index(3);
  const size_t cat = rng.Index(3);
  for (size_t j = 0; j < num; ++j) {
    schema.columns.push_back({"n" + std::to_string(j), ColumnKind::kNumerical, {}});
  }
  for (size_t j = 0; j < cat; ++j) {
    schema.columns.push_back({"c" + std::to_string(j), ColumnKind::kCategorical, {}});
  }
  TabularFrame f = TabularFrame::Empty(schema);
  for (size_t j = 0; j < schema.columns.size(); ++j) {
    auto& col = f.columns[j];
    const size_t k = 2 + rng.Index(4);
    for (size_t r = 0; r < n; ++r) {
      col.missing.push_back(false);
      if (col.kind == ColumnKind::kNumerical) {
        col.numeric.push_back(rng.Normal(10.0, 5.0));
      } else {
        col.categorical.push_back("v" + std::to_string(rng.Index(k)));
      }
    }
  }
  for (size_t r = 0; r < n; ++r) f.target.push_back(r % 3 == 0 ? "1" : "0");
  return f;
}

}  // namespace

TEST_CASE("csv reader handles quotes and CRLF") {
  std::istringstream in("a,b\r\n\"x,1\",2\r\n\"he said \"\"hi\"\"\",3\n\n");
  auto t = imbal::ReadCsv(in);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "x,1");
  CHECK(t.rows[1][0] == "he said \"hi\"");
  CHECK(t.rows[1][1] == "3");
}

TEST_CASE("load_dataset on the German credit file") {
  auto schema = imbal::tabular::LoadSchemaFile(std::string(IMBAL_REPO_DIR) +
                                               "/configs/german_credit.json");
  auto frame = imbal::tabular::LoadDataset(schema);
  CHECK(frame.NumRows() == 1000);
  CHECK(frame.NumColumns() == 20);
  CHECK(schema.NumNumerical() == 7);
  CHECK(schema.NumCategorical() == 13);
  size_t bad = 0;
  for (const auto& t : frame.target) bad += t == schema.positive_label;
  CHECK(bad == 300);
}

TEST_CASE("load_dataset with header only yields zero rows") {
  auto path = WriteTemp("empty.csv", "x,c,y\n");
  auto frame = imbal::tabular::LoadDataset(path, SmallSchema());
  CHECK(frame.NumRows() == 0);
  CHECK(frame.NumColumns() == 2);
}

TEST_CASE("load_dataset errors") {
  auto schema = SmallSchema();
  SUBCASE("unknown column") {
    auto path = WriteTemp("nocol.csv", "x,y\n1,bad\n");
    CHECK_THROWS_AS(imbal::tabular::LoadDataset(path, schema), std::invalid_argument);
  }
  SUBCASE("unparseable numeric") {
    auto path = WriteTemp("badnum.csv", "x,c,y\nabc,A,bad\n");
    CHECK_THROWS_AS(imbal::tabular::LoadDataset(path, schema), std::invalid_argument);
  }
  SUBCASE("unknown category under strict policy") {
    schema.columns[1].categories = {"A", "B"};
    schema.unknown_policy = imbal::tabular::UnknownCategoryPolicy::kStrict;
    auto path = WriteTemp("badcat.csv", "x,c,y\n1,Z,bad\n");
    CHECK_THROWS_AS(imbal::tabular::LoadDataset(path, schema), std::invalid_argument);
  }
  SUBCASE("missing cells are marked") {
    auto path = WriteTemp("missing.csv", "x,c,y\n,A,bad\n2,,good\n");
    auto f = imbal::tabular::LoadDataset(path, schema);
    CHECK(f.columns[0].missing[0]);
    CHECK(std::isnan(f.columns[0].numeric[0]));
    CHECK(f.columns[1].missing[1]);
  }
}

TEST_CASE("schema validation rejects bad declarations") {
  DatasetSchema s = SmallSchema();
  s.columns[1].categories = {"A", "A"};
  CHECK_THROWS(s.Validate());
  s = SmallSchema();
  s.target_labels = {"good", "ok"};
  CHECK_THROWS(s.Validate());
  s = SmallSchema();
  s.columns.push_back({"x", ColumnKind::kNumerical, {}});
  CHECK_THROWS(s.Validate());
}

TEST_CASE("fit_preprocessor statistics") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SUBCASE("plain column") {
    auto f = FrameOf({2, 4, 6}, {"A", "A", "B"}, {"bad", "good", "good"});
    auto m = PreprocessorModel::Fit(f, SmallSchema());
    CHECK(m.numeric(0).min == 2);
    CHECK(m.numeric(0).max == 6);
    CHECK(m.numeric(0).mean == 4);
  }
  SUBCASE("mean imputation precedes scaling") {
    auto f = FrameOf({1, nan, 3}, {"A", "A", "B"}, {"bad", "good", "good"});
    auto m = PreprocessorModel::Fit(f, SmallSchema());
    CHECK(m.numeric(0).mean == 2);
    CHECK(m.numeric(0).min == 1);
    CHECK(m.numeric(0).max == 3);
    auto enc = m.Transform(f);
    CHECK(enc.values(1, 0) == doctest::Approx(0.5));
  }
  SUBCASE("categorical mode") {
    auto f = FrameOf({1, 2, 3, 4}, {"A", "A", "B", ""},
                     {"bad", "good", "good", "good"});
    auto m = PreprocessorModel::Fit(f, SmallSchema());
    CHECK(m.categorical(1).Mode() == "A");
    auto enc = m.Transform(f);
    CHECK(enc.values(3, 1) == 1.0);  // missing -> A
  }
  SUBCASE("all-missing column") {
    auto f = FrameOf({nan, nan}, {"A", "B"}, {"bad", "good"});
    CHECK_THROWS(PreprocessorModel::Fit(f, SmallSchema()));
  }
  SUBCASE("constant column scales to zero") {
    auto f = FrameOf({5, 5, 5}, {"A", "B", "A"}, {"bad", "good", "good"});
    auto m = PreprocessorModel::Fit(f, SmallSchema());
    CHECK(m.numeric(0).constant);
    auto enc = m.Transform(f);
    CHECK(enc.values.col(0).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("transform values and one-hot") {
  auto f = FrameOf({2, 4, 6}, {"A", "B", "C"}, {"bad", "good", "good"});
  auto m = PreprocessorModel::Fit(f, SmallSchema());
  auto enc = m.Transform(f);
  CHECK(enc.values(0, 0) == 0.0);
  CHECK(enc.values(1, 0) == 0.5);
  CHECK(enc.values(2, 0) == 1.0);
  CHECK(enc.values(0, 1) == 1.0);
  CHECK(enc.values(0, 2) == 0.0);
  CHECK(enc.values(0, 3) == 0.0);
  CHECK(enc.labels == std::vector<int>{1, 0, 0});

  auto out_of_range = FrameOf({8}, {"Z"}, {"good"});
  auto e2 = m.Transform(out_of_range);
  CHECK(e2.values(0, 0) == 1.5);
  CHECK(e2.values(0, 1) == 1.0);  // unseen -> mode A
}

TEST_CASE("inverse_transform") {
  auto f = FrameOf({2, 4, 6}, {"A", "B", "C"}, {"bad", "good", "good"});
  auto m = PreprocessorModel::Fit(f, SmallSchema());
  imbal::tabular::EncodedMatrix e;
  e.layout = m.layout();
  e.values.resize(2, 4);
  e.values << 0.5, 0.1, 0.7, 0.2, 0.0, 0.0, 0.0, 0.0;
  e.labels = {1, 0};
  auto first = e.SelectRows({0});
  auto back = m.InverseTransform(first);
  CHECK(back.columns[0].numeric[0] == 4.0);
  CHECK(back.columns[1].categorical[0] == "B");
  CHECK(back.target[0] == "bad");
  CHECK_THROWS(m.InverseTransform(e));  // second row has an all-zero span
}

TEST_CASE("property: round trip and encoded ranges on random frames") {
  imbal::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    DatasetSchema schema;
    auto f = RandomFrame(rng, 5 + rng.Index(60), schema);
    auto m = PreprocessorModel::Fit(f, schema);
    auto enc = m.Transform(f);
    for (size_t j = 0; j < enc.layout.NumericWidth(); ++j) {
      CHECK(enc.values.col(j).minCoeff() >= 0.0);
      CHECK(enc.values.col(j).maxCoeff() <= 1.0);
    }
    size_t covered = enc.layout.NumericWidth();
    for (const auto& span : enc.layout.spans) {
      CHECK(span.offset == covered);
      covered += span.width;
      for (Eigen::Index r = 0; r < enc.values.rows(); ++r) {
        double sum = 0;
        for (size_t k = 0; k < span.width; ++k) {
          const double v = enc.values(r, span.offset + k);
          CHECK((v == 0.0 || v == 1.0));
          sum += v;
        }
        CHECK(sum == 1.0);
      }
    }
    CHECK(covered == enc.layout.Width());
    auto back = m.InverseTransform(enc);
    for (size_t c = 0; c < f.NumColumns(); ++c) {
      for (size_t r = 0; r < f.NumRows(); ++r) {
        if (f.columns[c].kind == ColumnKind::kNumerical) {
          CHECK(std::abs(back.columns[c].numeric[r] - f.columns[c].numeric[r]) <
                1e-9);
        } else {
          CHECK(back.columns[c].categorical[r] == f.columns[c].categorical[r]);
        }
      }
    }
    CHECK(back.target == f.target);
    auto again = m.Transform(back);
    CHECK((again.values - enc.values).cwiseAbs().maxCoeff() < 1e-12);
    // Mean is reconstructible from the fitted stats.
    for (size_t j : enc.layout.numeric_columns) {
      const auto& s = m.numeric(j);
      CHECK(s.min <= s.mean);
      CHECK(s.mean <= s.max);
    }
  }
}

TEST_CASE("preprocessor JSON round trip and mixed representation") {
  imbal::Rng rng(3);
  DatasetSchema schema;
  TabularFrame f;
  do {
    f = RandomFrame(rng, 40, schema);
  } while (schema.NumCategorical() == 0);
  auto m = PreprocessorModel::Fit(f, schema);
  auto m2 = PreprocessorModel::FromJson(m.ToJson());
  CHECK(m2.ToJson() == m.ToJson());
  auto enc = m.Transform(f);
  CHECK((m2.Transform(f).values - enc.values).norm() == 0.0);
  auto mixed = m.ToMixed(enc);
  CHECK(mixed.codes.cols() == static_cast<Eigen::Index>(schema.NumCategorical()));
  CHECK((m.FromMixed(mixed).values - enc.values).norm() == 0.0);
}

TEST_CASE("learned vocabularies are sorted and come from the fitted frame") {
  auto f = FrameOf({1, 2, 3}, {"zeta", "alpha", "mid"}, {"bad", "good", "good"});
  auto m = PreprocessorModel::Fit(f, SmallSchema());
  CHECK(m.categorical(1).categories ==
        std::vector<std::string>{"alpha", "mid", "zeta"});
}

TEST_CASE("infer schema guesses kinds") {
  auto path = WriteTemp("infer.csv", "a,b,t\n1,x,p\n2.5,y,q\n");
  auto s = imbal::tabular::InferSchema(path, "t", "p", ',');
  REQUIRE(s.columns.size() == 2);
  CHECK(s.columns[0].kind == ColumnKind::kNumerical);
  CHECK(s.columns[1].kind == ColumnKind::kCategorical);
}
