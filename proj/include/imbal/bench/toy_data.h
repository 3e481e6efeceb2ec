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


#ifndef IMBAL_BENCH_TOY_DATA_H_
#define IMBAL_BENCH_TOY_DATA_H_

#include <cstdint>
#include <string>

#include "imbal/tabular/frame.h"
#include "imbal/tabular/schema.h"

namespace imbal::bench {

struct ToyDataSpec {
  size_t rows = 2000;
  double minority_share = 0.2;
  uint64_t seed = 2024;
};

// Two numeric columns from a two-component Gaussian mixture, one component per
// class (in raw units, offset and scaled), and one three-category column whose
// frequencies also depend on the class. The components overlap, so neither
// column separates the classes on its own.
tabular::TabularFrame MakeToyData(const ToyDataSpec& spec);
tabular::DatasetSchema ToySchema();

// Writes the CSV and a schema config pointing at it.
void WriteToyDataset(const ToyDataSpec& spec, const std::string& csv_path,
                     const std::string& schema_path);

}  // namespace imbal::bench

#endif  // IMBAL_BENCH_TOY_DATA_H_
