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


#ifndef IMBAL_BENCH_RESULTS_H_
#define IMBAL_BENCH_RESULTS_H_

#include <fstream>
#include <string>
#include <vector>

#include "imbal/eval/metrics.h"
#include "json.hpp"

namespace imbal::bench {

// One metric of one (dataset, seed, method, classifier) cell with the
// provenance needed to trace it back to its configuration and partition.
struct RunRecord {
  eval::MetricRecord metric;
  std::string config_hash;
  std::string partition_checksum;
  nlohmann::json method_params;  // neighbour counts, GAN config, grid pick
  bool non_finite = false;       // value or a bootstrap entry is not finite

  nlohmann::json ToJson() const;
  static RunRecord FromJson(const nlohmann::json& j);
};

// A cell that produced no metrics. An empty classifier means the
// oversampling step itself failed.
struct CellFailure {
  std::string dataset;
  uint64_t seed = 0;
  std::string method;
  std::string classifier;
  std::string error;

  nlohmann::json ToJson() const;
  static CellFailure FromJson(const nlohmann::json& j);
};

inline constexpr const char* kRecordsFile = "records.jsonl";
inline constexpr const char* kFailuresFile = "failures.jsonl";
inline constexpr const char* kMetadataFile = "metadata.json";
inline constexpr const char* kConfigFile = "config.json";

// Append-only line writer. Each line is flushed as soon as it is complete,
// so a reader never sees a partial record.
class JsonLinesWriter {
 public:
  explicit JsonLinesWriter(const std::string& path);
  void Write(const nlohmann::json& line);

 private:
  std::ofstream out_;
};

// Reads every complete line; a torn last line is ignored.
std::vector<nlohmann::json> ReadJsonLines(const std::string& path);

struct ResultsStore {
  std::vector<RunRecord> records;
  std::vector<CellFailure> failures;
  nlohmann::json config;  // as written by the run, null if absent
};

// Loads a results directory written by RunBenchmark.
ResultsStore LoadResults(const std::string& dir);

}  // namespace imbal::bench

#endif  // IMBAL_BENCH_RESULTS_H_
