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


#ifndef IMBAL_BENCH_RUNNER_H_
#define IMBAL_BENCH_RUNNER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "imbal/bench/config.h"
#include "imbal/bench/results.h"
#include "imbal/eval/splits.h"
#include "imbal/tabular/frame.h"
#include "imbal/tabular/preprocessor.h"

namespace imbal::bench {

// One seeded 90/10 partition of a dataset, encoded with a preprocessor fitted
// on the training part only.
struct Partition {
  std::string dataset;
  uint64_t seed = 0;
  eval::TrainTestSplit split;
  std::shared_ptr<const tabular::PreprocessorModel> preprocessor;
  tabular::EncodedMatrix train;
  tabular::EncodedMatrix test;
};

// Labels of a raw frame: 1 where the target equals the positive label.
std::vector<int> FrameLabels(const tabular::TabularFrame& frame,
                             const tabular::DatasetSchema& schema);

tabular::TabularFrame LoadEntry(const DatasetEntry& entry);

// Stratified split seeded by (seed, dataset) only, so every method and
// every configuration sees the same rows.
Partition MakePartition(const DatasetEntry& entry, const tabular::TabularFrame& frame,
                        uint64_t seed, double test_fraction);

// FNV-1a over the split indices and the encoded training matrix with labels.
uint64_t PartitionChecksum(const eval::TrainTestSplit& split,
                           const tabular::EncodedMatrix& train);

struct OversampledTrain {
  tabular::EncodedMatrix data;
  nlohmann::json params;
  // Only set for cwgan: the generated rows, for quality summaries.
  std::optional<tabular::EncodedMatrix> synthetic;
};

// Balances the training part with one method. cwgan runs the optional grid
// search, trains on the chosen configuration with `config.ablation` applied
// and samples the deficit.
OversampledTrain OversampleTrain(const BenchmarkConfig& config,
                                 const resample::OversampleMethod& method,
                                 const Partition& partition, uint64_t seed);

struct BenchmarkResult {
  std::vector<RunRecord> records;
  std::vector<CellFailure> failures;
  std::vector<nlohmann::json> quality;  // one per cwgan (dataset, seed)
};

struct RunOptions {
  bool write_files = true;  // records, failures, metadata, config, quality
};

// Runs every (dataset, seed, method, classifier) cell. Failures are logged
// and recorded; the sweep continues.
BenchmarkResult RunBenchmark(const BenchmarkConfig& config, const RunOptions& options = {});

}  // namespace imbal::bench

#endif  // IMBAL_BENCH_RUNNER_H_
