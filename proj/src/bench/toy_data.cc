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


#include "imbal/bench/toy_data.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "imbal/common/random.h"

namespace imbal::bench {
namespace {

struct Component {
  double mean[2];
  double sd[2];
};

constexpr Component kMajority = {{0.0, 0.0}, {1.0, 1.0}};
constexpr Component kMinority = {{3.5, 3.5}, {0.8, 0.8}};
constexpr double kMajorityColors[3] = {0.55, 0.30, 0.15};
constexpr double kMinorityColors[3] = {0.15, 0.25, 0.60};
const char* const kColors[3] = {"red", "green", "blue"};

}  // namespace

tabular::DatasetSchema ToySchema() {
  tabular::DatasetSchema s;
  s.name = "toy";
  s.target = "default";
  s.positive_label = "yes";
  s.target_labels = {"no", "yes"};
  s.columns = {{"income", tabular::ColumnKind::kNumerical, {}},
               {"balance", tabular::ColumnKind::kNumerical, {}},
               {"segment", tabular::ColumnKind::kCategorical, {}}};
  return s;
}

tabular::TabularFrame MakeToyData(const ToyDataSpec& spec) {
  if (spec.minority_share <= 0 || spec.minority_share >= 1) {
    throw std::invalid_argument("toy data: minority share must be in (0, 1)");
  }
  Rng rng(spec.seed);
  const auto minority = static_cast<size_t>(
      std::llround(spec.minority_share * static_cast<double>(spec.rows)));
  std::vector<bool> is_minority(spec.rows, false);
  std::fill(is_minority.begin(), is_minority.begin() + minority, true);
  rng.Shuffle(is_minority);

  tabular::TabularFrame f = tabular::TabularFrame::Empty(ToySchema());
  for (auto& c : f.columns) c.missing.assign(spec.rows, false);
  for (size_t r = 0; r < spec.rows; ++r) {
    const bool pos = is_minority[r];
    const Component& c = pos ? kMinority : kMajority;
    const double a = rng.Normal(c.mean[0], c.sd[0]);
    const double b = rng.Normal(c.mean[1], c.sd[1]);
    f.columns[0].numeric.push_back(std::round((50.0 + 10.0 * a) * 100) / 100);
    f.columns[1].numeric.push_back(std::round((1000.0 + 250.0 * b) * 100) / 100);
    f.columns[2].categorical.push_back(
        kColors[rng.Categorical(pos ? kMinorityColors : kMajorityColors, 3)]);
    f.target.push_back(pos ? "yes" : "no");
  }
  return f;
}

void WriteToyDataset(const ToyDataSpec& spec, const std::string& csv_path,
                     const std::string& schema_path) {
  tabular::WriteDataset(csv_path, MakeToyData(spec));
  tabular::DatasetSchema schema = ToySchema();
  const auto csv_abs = std::filesystem::absolute(csv_path);
  const auto schema_dir = std::filesystem::absolute(schema_path).parent_path();
  schema.dataset_path = std::filesystem::relative(csv_abs, schema_dir).string();
  std::ofstream out(schema_path);
  if (!out) throw std::runtime_error("cannot write " + schema_path);
  out << schema.ToJson().dump(2) << "\n";
}

}  // namespace imbal::bench
